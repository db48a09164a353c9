//! Signed Gauss diagrams of virtual knots.
//!
//! A diagram is the cyclic word of crossing passages met while travelling
//! once around the knot. Each chord (crossing) contributes an over-passage
//! and an under-passage carrying the crossing sign.

mod moves;
mod numbering;

pub use moves::{apply_move, r3_candidates, MoveSpec};
pub use numbering::{alexander_numbering, Numbering};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::poly::LaurentPoly1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("Gauss code syntax error: {0}")]
    Syntax(String),
    #[error("inconsistent chord: {0}")]
    ChordMismatch(String),
    #[error("no chord with id {0}")]
    UnknownChord(u32),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
}

impl GaussError {
    pub fn name(&self) -> &'static str {
        match self {
            GaussError::Syntax(_) => "SyntaxError",
            GaussError::ChordMismatch(_) => "ChordMismatch",
            GaussError::UnknownChord(_) => "UnknownChord",
            GaussError::MoveNotApplicable(_) => "MoveNotApplicable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Token {
    pub chord: u32,
    pub role: Role,
    pub sign: i8,
}

impl Token {
    pub fn over(chord: u32, sign: i8) -> Self {
        Self {
            chord,
            role: Role::Over,
            sign,
        }
    }

    pub fn under(chord: u32, sign: i8) -> Self {
        Self {
            chord,
            role: Role::Under,
            sign,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        let sign = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{role}{}{sign}", self.chord)
    }
}

impl FromStr for Token {
    type Err = GaussError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GaussError::Syntax(format!("bad token {s:?}, expected e.g. O1+ or U3-"));
        let mut chars = s.chars();
        let role = match chars.next() {
            Some('O') => Role::Over,
            Some('U') => Role::Under,
            _ => return Err(bad()),
        };
        let sign = match chars.next_back() {
            Some('+') => 1,
            Some('-') => -1,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let chord = digits.parse().map_err(|_| bad())?;
        Ok(Token { chord, role, sign })
    }
}

/// A validated Gauss diagram: every chord appears once as Over and once as
/// Under, both with the chord's sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussDiagram {
    tokens: Vec<Token>,
}

impl GaussDiagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_tokens(tokens: Vec<Token>) -> Result<Self, GaussError> {
        let mut seen: BTreeMap<u32, (Option<i8>, Option<i8>)> = BTreeMap::new();
        for t in &tokens {
            if t.sign != 1 && t.sign != -1 {
                return Err(GaussError::ChordMismatch(format!(
                    "chord {} has sign {}",
                    t.chord, t.sign
                )));
            }
            let entry = seen.entry(t.chord).or_default();
            let slot = match t.role {
                Role::Over => &mut entry.0,
                Role::Under => &mut entry.1,
            };
            if slot.replace(t.sign).is_some() {
                return Err(GaussError::ChordMismatch(format!("chord {} repeats {t}", t.chord)));
            }
        }
        for (chord, ends) in &seen {
            match ends {
                (Some(a), Some(b)) if a == b => {}
                (Some(_), Some(_)) => return Err(GaussError::ChordMismatch(format!("chord {chord} has two signs"))),
                _ => {
                    return Err(GaussError::ChordMismatch(format!(
                        "chord {chord} needs one Over and one Under endpoint"
                    )))
                }
            }
        }
        Ok(Self { tokens })
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn chord_count(&self) -> usize {
        self.tokens.len() / 2
    }

    /// Chord ids in increasing order.
    pub fn chords(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self.tokens.iter().map(|t| t.chord).collect();
        set.into_iter().collect()
    }

    pub fn contains(&self, chord: u32) -> bool {
        self.tokens.iter().any(|t| t.chord == chord)
    }

    /// Positions of the Over and Under endpoints of `chord`.
    pub fn endpoints(&self, chord: u32) -> Result<(usize, usize), GaussError> {
        let find = |role| self.tokens.iter().position(|t| t.chord == chord && t.role == role);
        match (find(Role::Over), find(Role::Under)) {
            (Some(o), Some(u)) => Ok((o, u)),
            _ => Err(GaussError::UnknownChord(chord)),
        }
    }

    pub fn sign(&self, chord: u32) -> Result<i8, GaussError> {
        self.tokens
            .iter()
            .find(|t| t.chord == chord)
            .map(|t| t.sign)
            .ok_or(GaussError::UnknownChord(chord))
    }

    pub fn writhe(&self) -> i64 {
        self.tokens
            .iter()
            .filter(|t| t.role == Role::Over)
            .map(|t| i64::from(t.sign))
            .sum()
    }

    /// Smallest id not in use.
    pub fn fresh_id(&self) -> u32 {
        self.tokens.iter().map(|t| t.chord).max().map_or(1, |m| m + 1)
    }

    /// Same cyclic word starting at `offset`.
    pub fn rotated(&self, offset: usize) -> Self {
        let mut tokens = self.tokens.clone();
        if !tokens.is_empty() {
            let k = offset % tokens.len();
            tokens.rotate_left(k);
        }
        Self { tokens }
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for GaussDiagram {
    type Err = GaussError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let tokens = s
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<Token>, _>>()?;
        Self::from_tokens(tokens)
    }
}

pub fn parse_gauss(code: &str) -> Result<GaussDiagram, GaussError> {
    code.parse()
}

/// Result of the oriented smoothing at one chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smoothing {
    /// Token positions strictly after the Over endpoint and before the Under endpoint.
    pub arc_a: Vec<usize>,
    pub arc_b: Vec<usize>,
    /// Chords with exactly one endpoint on each arc.
    pub linked: BTreeSet<u32>,
}

pub fn smooth(d: &GaussDiagram, chord: u32) -> Result<Smoothing, GaussError> {
    let (o, u) = d.endpoints(chord)?;
    let n = d.len();
    let arc_a: Vec<usize> = (1..n).map(|k| (o + k) % n).take_while(|&p| p != u).collect();
    let arc_b: Vec<usize> = (1..n).map(|k| (u + k) % n).take_while(|&p| p != o).collect();
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for &p in &arc_a {
        *count.entry(d.tokens[p].chord).or_default() += 1;
    }
    let linked = count.into_iter().filter(|&(_, c)| c == 1).map(|(id, _)| id).collect();
    Ok(Smoothing { arc_a, arc_b, linked })
}

/// Signed count of chords linked with `chord`: `+sign(y)` when `y` points
/// into the arc from the Over to the Under endpoint, `-sign(y)` otherwise.
pub fn index(d: &GaussDiagram, chord: u32) -> Result<i64, GaussError> {
    let s = smooth(d, chord)?;
    let in_a: BTreeSet<usize> = s.arc_a.iter().copied().collect();
    s.linked
        .iter()
        .map(|&y| {
            let (_, uy) = d.endpoints(y)?;
            let dir = if in_a.contains(&uy) { 1 } else { -1 };
            Ok(i64::from(d.sign(y)?) * dir)
        })
        .sum()
}

/// The same quantity summed token by token over the arc: each Under
/// endpoint counts `+sign`, each Over endpoint `-sign`. Chords lying wholly
/// inside the arc cancel, so no linking test is needed.
pub fn index_by_interleaving(d: &GaussDiagram, chord: u32) -> Result<i64, GaussError> {
    let (o, u) = d.endpoints(chord)?;
    let n = d.len();
    let mut total = 0;
    let mut p = (o + 1) % n;
    while p != u {
        let t = d.tokens[p];
        let dir = if t.role == Role::Under { 1 } else { -1 };
        total += i64::from(t.sign) * dir;
        p = (p + 1) % n;
    }
    Ok(total)
}

pub fn is_almost_classical(d: &GaussDiagram) -> bool {
    d.chords().into_iter().all(|c| index(d, c) == Ok(0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub chord: u32,
    pub sign: i8,
    pub index: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub entries: Vec<IndexEntry>,
    pub writhe: i64,
}

pub fn index_report(d: &GaussDiagram) -> IndexReport {
    let entries = d
        .chords()
        .into_iter()
        .map(|chord| IndexEntry {
            chord,
            sign: d.sign(chord).expect("chord listed by the diagram"),
            index: index(d, chord).expect("chord listed by the diagram"),
        })
        .collect();
    IndexReport {
        entries,
        writhe: d.writhe(),
    }
}

impl fmt::Display for IndexReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let sign = if e.sign > 0 { "+1" } else { "-1" };
            writeln!(f, "chord {}: sign {sign} index {}", e.chord, e.index)?;
        }
        write!(f, "writhe {}", self.writhe)
    }
}

/// `Σ sign(x)·q^{index(x)}` over chords of nonzero index.
pub fn writhe_index_polynomial(d: &GaussDiagram) -> LaurentPoly1 {
    LaurentPoly1::from_terms(
        index_report(d)
            .entries
            .into_iter()
            .filter(|e| e.index != 0)
            .map(|e| ([e.index], i64::from(e.sign))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const CLASSICAL_TREFOIL: &str = "O1+,U2+,O3+,U1+,O2+,U3+";
    pub(crate) const VIRTUAL_TREFOIL: &str = "O1+,O2+,U1+,U2+";

    fn g(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_serialize() {
        let d = g(VIRTUAL_TREFOIL);
        assert_eq!(d.chord_count(), 2);
        assert_eq!(d.to_string(), VIRTUAL_TREFOIL);
        assert_eq!(g("O1+,U1+").chord_count(), 1);
        assert_eq!(g("").chord_count(), 0);
        assert_eq!(g(" O1- , U1- ").to_string(), "O1-,U1-");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "O1+,U2+,O1-,U2+".parse::<GaussDiagram>(),
            Err(GaussError::ChordMismatch(_))
        ));
        assert!(matches!(
            "O1+,U1-".parse::<GaussDiagram>(),
            Err(GaussError::ChordMismatch(_))
        ));
        assert!(matches!(
            "O1+".parse::<GaussDiagram>(),
            Err(GaussError::ChordMismatch(_))
        ));
        assert!(matches!("X1+,U1+".parse::<GaussDiagram>(), Err(GaussError::Syntax(_))));
        assert!(matches!("O+,U1+".parse::<GaussDiagram>(), Err(GaussError::Syntax(_))));
        assert!(matches!("O1,U1+".parse::<GaussDiagram>(), Err(GaussError::Syntax(_))));
        assert!(matches!("O1+,,U1+".parse::<GaussDiagram>(), Err(GaussError::Syntax(_))));
    }

    #[test]
    fn smoothing_linked_sets() {
        let linked = |code: &str, x| smooth(&g(code), x).unwrap().linked.into_iter().collect::<Vec<_>>();
        assert_eq!(linked(VIRTUAL_TREFOIL, 1), vec![2]);
        assert_eq!(linked("O1+,U1+", 1), Vec::<u32>::new());
        assert_eq!(linked(CLASSICAL_TREFOIL, 1), vec![2, 3]);
        assert_eq!(smooth(&g(VIRTUAL_TREFOIL), 9), Err(GaussError::UnknownChord(9)));
        let s = smooth(&g(CLASSICAL_TREFOIL), 1).unwrap();
        assert_eq!(s.arc_a, vec![1, 2]);
        assert_eq!(s.arc_b, vec![4, 5]);
    }

    #[test]
    fn index_values() {
        let c = g(CLASSICAL_TREFOIL);
        for x in 1..=3 {
            assert_eq!(index(&c, x), Ok(0));
        }
        let v = g(VIRTUAL_TREFOIL);
        assert_eq!(index(&v, 1), Ok(-1));
        assert_eq!(index(&v, 2), Ok(1));
        assert_eq!(index(&g("O1-,U1-"), 1), Ok(0));
        assert_eq!(index(&v, 3), Err(GaussError::UnknownChord(3)));
    }

    #[test]
    fn index_paths_agree_on_fixed_codes() {
        for code in [
            CLASSICAL_TREFOIL,
            VIRTUAL_TREFOIL,
            "O1-,O2+,U3-,U1-,O3-,U2+",
            "U1+,O2-,O1+,U3+,U2-,O3+",
        ] {
            let d = g(code);
            for x in d.chords() {
                assert_eq!(index(&d, x), index_by_interleaving(&d, x), "{code} chord {x}");
            }
        }
    }

    #[test]
    fn almost_classical_examples() {
        assert!(is_almost_classical(&g(CLASSICAL_TREFOIL)));
        assert!(!is_almost_classical(&g(VIRTUAL_TREFOIL)));
        assert!(is_almost_classical(&GaussDiagram::empty()));
    }

    #[test]
    fn writhe_polynomials() {
        assert!(writhe_index_polynomial(&g(CLASSICAL_TREFOIL)).is_zero());
        let w = writhe_index_polynomial(&g(VIRTUAL_TREFOIL));
        assert_eq!(w, "t + t^-1".parse().unwrap());
        let kinked = g("O1+,O2+,U1+,O3-,U3-,U2+");
        assert_eq!(writhe_index_polynomial(&kinked), w);
    }

    #[test]
    fn report_format() {
        let r = index_report(&g(VIRTUAL_TREFOIL));
        assert_eq!(
            r.to_string(),
            "chord 1: sign +1 index -1\nchord 2: sign +1 index 1\nwrithe 2"
        );
    }
}
