//! Braid words, their closures, Stallings homogenization and fiber
//! stabilization of mixed braids.
//!
//! Strands are numbered by position, 1-based in letters and 0-based in
//! vectors. In `σ_i` the strand at position `i` crosses to position `i + 1`,
//! passing over for a positive letter and under for a negative one.

mod stabilize;
mod stallings;

pub use stabilize::{fiber_stabilize, total_intersection, MixedBraid};
pub use stallings::{stallings_homogenize, Homogenized};

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid syntax error: {0}")]
    Syntax(String),
    #[error("generator {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("braid is not homogeneous: some generator appears with both signs")]
    NotHomogeneous,
    #[error("fiber genus ({numerator})/2 is not a nonnegative integer")]
    NonIntegralGenus { numerator: i64 },
    #[error("moving strands do not close to a single knot")]
    MovingPartNotKnot,
    #[error("mixed braid is not parted: {0}")]
    NotParted(String),
}

impl BraidError {
    pub fn name(&self) -> &'static str {
        match self {
            BraidError::Syntax(_) => "SyntaxError",
            BraidError::IndexOutOfRange { .. } => "IndexOutOfRange",
            BraidError::NotHomogeneous => "NotHomogeneous",
            BraidError::NonIntegralGenus { .. } => "NonIntegralGenus",
            BraidError::MovingPartNotKnot => "MovingPartNotKnot",
            BraidError::NotParted(_) => "NotParted",
        }
    }
}

/// `σ_index^sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub sign: i8,
}

impl Letter {
    pub fn new(index: usize, sign: i8) -> Self {
        Self { index, sign }
    }

    pub fn inverse(self) -> Self {
        Self {
            index: self.index,
            sign: -self.sign,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        for l in &letters {
            if l.index == 0 || l.index >= strands || (l.sign != 1 && l.sign != -1) {
                return Err(BraidError::IndexOutOfRange {
                    index: l.index as i64 * i64::from(l.sign),
                    strands,
                });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn parse(s: &str, strands: usize) -> Result<Self, BraidError> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|tok| {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| BraidError::Syntax(format!("not an integer: {tok:?}")))?;
                if v == 0 {
                    return Err(BraidError::Syntax("generator 0 does not exist".into()));
                }
                if v.unsigned_abs() as usize >= strands {
                    return Err(BraidError::IndexOutOfRange { index: v, strands });
                }
                Ok(Letter::new(v.unsigned_abs() as usize, if v > 0 { 1 } else { -1 }))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation `self · other` (self first).
    pub fn then(&self, other: &BraidWord) -> Self {
        assert_eq!(self.strands, other.strands, "braids on different strand counts");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// Final position of the strand starting at each position.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Remove the strands starting at the given positions, together with
    /// every crossing they take part in.
    pub fn delete_strands(&self, doomed: &BTreeSet<usize>) -> BraidWord {
        self.delete_strands_tracked(doomed).0
    }

    /// As [`Self::delete_strands`], also returning the index in `self` of
    /// each surviving letter.
    pub fn delete_strands_tracked(&self, doomed: &BTreeSet<usize>) -> (BraidWord, Vec<usize>) {
        let mut at: Vec<usize> = (0..self.strands).collect();
        let mut letters = Vec::new();
        let mut kept = Vec::new();
        for (k, l) in self.letters.iter().enumerate() {
            let (a, b) = (at[l.index - 1], at[l.index]);
            if !doomed.contains(&a) && !doomed.contains(&b) {
                let left = at[..l.index - 1].iter().filter(|s| !doomed.contains(s)).count();
                letters.push(Letter::new(left + 1, l.sign));
                kept.push(k);
            }
            at.swap(l.index - 1, l.index);
        }
        let strands = self.strands - doomed.iter().filter(|&&s| s < self.strands).count();
        (BraidWord { strands, letters }, kept)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.index as i64 * i64::from(l.sign))?;
        }
        Ok(())
    }
}

/// Components and linking numbers of a braid closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSummary {
    /// `permutation[s]` is the final position of the strand starting at `s`.
    pub permutation: Vec<usize>,
    /// Component of the strand starting at each position; components are
    /// numbered by their leftmost starting position.
    pub component_of: Vec<usize>,
    pub components: usize,
    /// Symmetric matrix of pairwise linking numbers, zero diagonal.
    pub linking: Vec<Vec<i64>>,
}

impl ClosureSummary {
    pub fn lk(&self, a: usize, b: usize) -> i64 {
        self.linking[a][b]
    }

    /// Starting positions of the strands in component `c`.
    pub fn strands_of(&self, c: usize) -> Vec<usize> {
        (0..self.component_of.len())
            .filter(|&s| self.component_of[s] == c)
            .collect()
    }
}

pub fn closure_summary(b: &BraidWord) -> ClosureSummary {
    let n = b.strands;
    let permutation = b.permutation();
    let mut component_of = vec![usize::MAX; n];
    let mut components = 0;
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let mut s = start;
        while component_of[s] == usize::MAX {
            component_of[s] = components;
            s = permutation[s];
        }
        components += 1;
    }
    let mut doubled = vec![vec![0i64; components]; components];
    let mut at: Vec<usize> = (0..n).collect();
    for l in &b.letters {
        let (ca, cb) = (component_of[at[l.index - 1]], component_of[at[l.index]]);
        if ca != cb {
            doubled[ca][cb] += i64::from(l.sign);
            doubled[cb][ca] += i64::from(l.sign);
        }
        at.swap(l.index - 1, l.index);
    }
    let linking = doubled
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| {
                    debug_assert!(v.is_even(), "crossings between closed components come in pairs");
                    v / 2
                })
                .collect()
        })
        .collect();
    ClosureSummary {
        permutation,
        component_of,
        components,
        linking,
    }
}

/// Sign of each generator `σ_1 … σ_{n-1}`: `Some(±1)` if it occurs with a
/// single sign, `None` if absent. `Err` if some generator occurs with both.
fn generator_signs(b: &BraidWord) -> Result<Vec<Option<i8>>, BraidError> {
    let mut signs = vec![None; b.strands.saturating_sub(1)];
    for l in &b.letters {
        match signs[l.index - 1] {
            None => signs[l.index - 1] = Some(l.sign),
            Some(s) if s != l.sign => return Err(BraidError::NotHomogeneous),
            Some(_) => {}
        }
    }
    Ok(signs)
}

/// Every generator occurs, and always with the same sign.
pub fn is_homogeneous(b: &BraidWord) -> bool {
    matches!(generator_signs(b), Ok(s) if s.iter().all(Option::is_some))
}

/// No generator occurs with both signs; absent generators are allowed.
pub fn is_sign_consistent(b: &BraidWord) -> bool {
    generator_signs(b).is_ok()
}

/// Euler characteristic and genus of the surface built from one disc per
/// strand and one half-twisted band per letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberEuler {
    pub chi: i64,
    pub components: usize,
    /// Connected pieces of the surface: one more than the number of absent generators.
    pub pieces: usize,
    pub genus: i64,
}

pub fn fiber_euler(b: &BraidWord) -> Result<FiberEuler, BraidError> {
    let signs = generator_signs(b)?;
    let chi = b.strands as i64 - b.letters.len() as i64;
    let components = closure_summary(b).components;
    let pieces = 1 + signs.iter().filter(|s| s.is_none()).count();
    let numerator = 2 * pieces as i64 - components as i64 - chi;
    if numerator < 0 || numerator.is_odd() {
        return Err(BraidError::NonIntegralGenus { numerator });
    }
    Ok(FiberEuler {
        chi,
        components,
        pieces,
        genus: numerator / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, n).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(w("1 -2 1 -2", 3).len(), 4);
        assert_eq!(w("1 -2 1 -2", 3).to_string(), "1 -2 1 -2");
        assert!(w("", 4).is_empty());
        assert_eq!(
            BraidWord::parse("3", 3),
            Err(BraidError::IndexOutOfRange { index: 3, strands: 3 })
        );
        assert!(matches!(BraidWord::parse("0", 3), Err(BraidError::Syntax(_))));
        assert!(matches!(BraidWord::parse("1 a", 3), Err(BraidError::Syntax(_))));
    }

    #[test]
    fn closures() {
        let hopf = closure_summary(&w("1 1", 2));
        assert_eq!(hopf.components, 2);
        assert_eq!(hopf.lk(0, 1), 1);

        let borromean = closure_summary(&w("1 -2 1 -2 1 -2", 3));
        assert_eq!(borromean.components, 3);
        assert!(borromean.linking.iter().flatten().all(|&v| v == 0));

        let trivial = closure_summary(&BraidWord::identity(4));
        assert_eq!(trivial.components, 4);
        assert_eq!(trivial.permutation, vec![0, 1, 2, 3]);

        let trefoil = closure_summary(&w("1 1 1", 2));
        assert_eq!(trefoil.components, 1);
    }

    #[test]
    fn homogeneity() {
        assert!(is_homogeneous(&w("-2 1 -2 1", 3)));
        assert!(!is_homogeneous(&w("1 -1", 2)));
        assert!(!is_homogeneous(&w("1", 3)));
        assert!(is_sign_consistent(&w("1", 3)));
        assert!(!is_sign_consistent(&w("1 -1", 2)));
        assert!(is_homogeneous(&BraidWord::identity(1)));
    }

    #[test]
    fn fiber_surfaces() {
        let hopf_band = fiber_euler(&w("1", 2)).unwrap();
        assert_eq!((hopf_band.chi, hopf_band.components, hopf_band.genus), (1, 1, 0));
        assert_eq!(fiber_euler(&w("-2 1 -2 1", 3)).unwrap().chi, -1);
        let trefoil = fiber_euler(&w("1 1 1", 2)).unwrap();
        assert_eq!((trefoil.chi, trefoil.components, trefoil.genus), (-1, 1, 1));
        assert_eq!(fiber_euler(&w("1 -1", 2)), Err(BraidError::NotHomogeneous));
        // Split union of a Hopf band and a disc.
        let split = fiber_euler(&w("1 1", 3)).unwrap();
        assert_eq!((split.pieces, split.genus), (2, 0));
    }

    #[test]
    fn strand_deletion() {
        let b = w("1 2 -1 2", 3);
        let doomed = BTreeSet::from([1]);
        // The middle strand takes part in every crossing but the second.
        assert_eq!(b.delete_strands(&doomed).to_string(), "1");
        assert_eq!(b.delete_strands(&BTreeSet::new()), b);
    }
}
