use std::fmt;

use num_integer::Integer;

use crate::braid::BraidWord;

use super::MilnorError;

/// Word in free generators `x_1 … x_n`, stored as `(generator, ±1)` letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn generator(i: usize) -> Self {
        Self { letters: vec![(i, 1)] }
    }

    /// Build from letters without reducing.
    pub fn from_letters(letters: Vec<(usize, i8)>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancel adjacent `x x⁻¹` pairs until none remain.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        Self { letters: out }
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn times(&self, other: &FreeWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }.reduced()
    }

    pub fn power_of(g: usize, e: i64) -> Self {
        let sign = if e < 0 { -1 } else { 1 };
        Self {
            letters: vec![(g, sign); e.unsigned_abs() as usize],
        }
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.letters.iter().filter(|l| l.0 == g).map(|l| i64::from(l.1)).sum()
    }

    /// Largest generator index used, or 0.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.0).max().unwrap_or(0)
    }

    /// Parse `m1 m2 m1^-1 m2^-1` (the letter may be `m` or `x`; integer
    /// exponents expand to repeated letters; `1` is the empty word).
    pub fn parse(s: &str) -> Result<Self, MilnorError> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace().filter(|&t| t != "1") {
            let bad = || MilnorError::Syntax(format!("bad letter {tok:?}, expected e.g. m2 or m1^-1"));
            let body = tok
                .strip_prefix('m')
                .or_else(|| tok.strip_prefix('x'))
                .ok_or_else(bad)?;
            let (gen, exp) = match body.split_once('^') {
                Some((g, e)) => (g, e.trim_start_matches('(').trim_end_matches(')')),
                None => (body, "1"),
            };
            let gen: usize = gen.parse().map_err(|_| bad())?;
            let exp: i64 = exp.parse().map_err(|_| bad())?;
            if gen == 0 {
                return Err(bad());
            }
            letters.extend(Self::power_of(gen, exp).letters);
        }
        Ok(Self { letters })
    }

    /// Render with the given generator prefix, e.g. `m1 m2^-1`.
    pub fn format_with(&self, prefix: &str) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                if e > 0 {
                    format!("{prefix}{g}")
                } else {
                    format!("{prefix}{g}^-1")
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("x"))
    }
}

/// Image of `x_g` under a single Artin generator `σ_i^sign`.
fn artin_letter_image(i: usize, sign: i8, g: usize) -> FreeWord {
    let w = |letters: Vec<(usize, i8)>| FreeWord::from_letters(letters);
    match (sign > 0, g) {
        (true, g) if g == i => w(vec![(i, 1), (i + 1, 1), (i, -1)]),
        (true, g) if g == i + 1 => w(vec![(i, 1)]),
        (false, g) if g == i => w(vec![(i + 1, 1)]),
        (false, g) if g == i + 1 => w(vec![(i + 1, -1), (i, 1), (i + 1, 1)]),
        _ => FreeWord::generator(g),
    }
}

/// Image of `w` under the Artin automorphism of `beta`, where a word
/// `a_1 ⋯ a_N` acts as the composite `φ_{a_1} ∘ ⋯ ∘ φ_{a_N}`.
pub fn artin_apply(beta: &BraidWord, w: &FreeWord) -> Result<FreeWord, MilnorError> {
    if w.max_generator() > beta.strands() {
        return Err(MilnorError::IndexOutOfRange {
            index: w.max_generator(),
            strands: beta.strands(),
        });
    }
    let mut current = w.reduced();
    for l in beta.letters().iter().rev() {
        let mut next = Vec::new();
        for &(g, e) in current.letters() {
            let image = artin_letter_image(l.index, l.sign, g);
            if e > 0 {
                next.extend_from_slice(image.letters());
            } else {
                next.extend_from_slice(image.inverse().letters());
            }
        }
        current = FreeWord::from_letters(next).reduced();
    }
    Ok(current)
}

/// Longitude words of the closure of a pure braid, one per strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeSet {
    pub longitudes: Vec<FreeWord>,
}

impl LongitudeSet {
    pub fn components(&self) -> usize {
        self.longitudes.len()
    }

    /// One longitude word per line, `1` for the empty word; blank lines and
    /// `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, MilnorError> {
        let longitudes = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(FreeWord::parse)
            .collect::<Result<_, _>>()?;
        Ok(Self { longitudes })
    }

    /// Gcd of the pairwise linking numbers read off as exponent sums.
    pub fn linking_gcd(&self) -> u64 {
        let k = self.components();
        let mut g = 0u64;
        for i in 1..=k {
            for j in (1..=k).filter(|&j| j != i) {
                g = g.gcd(&longitude_linking(self, i, j).unsigned_abs());
            }
        }
        g
    }
}

/// For each strand `i`, write `φ_β(x_i) = w_i x_i w_i⁻¹` and return `w_i`
/// with its own exponent sum cleared by a power of `x_i` on the left.
pub fn longitudes_from_pure_braid(beta: &BraidWord) -> Result<LongitudeSet, MilnorError> {
    let n = beta.strands();
    if beta.permutation().iter().enumerate().any(|(s, &p)| s != p) {
        return Err(MilnorError::NotPure);
    }
    let mut longitudes = Vec::with_capacity(n);
    for i in 1..=n {
        let image = artin_apply(beta, &FreeWord::generator(i))?;
        let letters = image.letters();
        let len = letters.len();
        // A reduced conjugate of x_i has odd length with x_i in the middle.
        let mid = len / 2;
        debug_assert!(
            len % 2 == 1 && letters[mid] == (i, 1),
            "pure braid image conjugates x_i"
        );
        let conj = FreeWord::from_letters(letters[..mid].to_vec());
        let framing = conj.exponent_sum(i);
        longitudes.push(FreeWord::power_of(i, -framing).times(&conj));
    }
    Ok(LongitudeSet { longitudes })
}

/// Exponent sum of `x_j` in the longitude of strand `i` (both 1-based); for a
/// pure braid this is the linking number of the two closed strands.
pub fn longitude_linking(l: &LongitudeSet, i: usize, j: usize) -> i64 {
    l.longitudes[i - 1].exponent_sum(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, n).unwrap()
    }

    fn fw(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn longitude_files() {
        let l = LongitudeSet::parse("# Borromean\n1\n\nm1 m3\nm1 m2 m1^-1 m2^-1 # third\n").unwrap();
        assert_eq!(l.components(), 3);
        assert!(l.longitudes[0].is_empty());
        assert_eq!(l.linking_gcd(), 1);
        assert!(LongitudeSet::parse("m1 q2").is_err());
    }

    #[test]
    fn parse_and_reduce() {
        assert_eq!(fw("m1 m2 m2^-1 m1^-1").reduced(), FreeWord::empty());
        assert_eq!(fw("x1^2 x3^-1").to_string(), "x1 x1 x3^-1");
        assert_eq!(fw("").to_string(), "1");
        assert!(FreeWord::parse("m0").is_err());
        assert!(FreeWord::parse("y1").is_err());
        assert!(FreeWord::parse("m1^a").is_err());
    }

    #[test]
    fn artin_images() {
        let w = fw("x1 x3^-1 x2");
        assert_eq!(artin_apply(&BraidWord::identity(3), &w).unwrap(), w);
        assert_eq!(artin_apply(&b("1", 2), &fw("x1")).unwrap(), fw("x1 x2 x1^-1"));
        assert_eq!(artin_apply(&b("1", 2), &fw("x2")).unwrap(), fw("x1"));
        assert_eq!(artin_apply(&b("1 -1", 3), &w).unwrap(), w);
        assert_eq!(artin_apply(&b("-1 1", 3), &w).unwrap(), w);
        assert!(matches!(
            artin_apply(&b("1", 2), &fw("x3")),
            Err(MilnorError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn composite_is_left_to_right_composition() {
        // φ_{σ1σ2} = φ_{σ1} ∘ φ_{σ2}
        let w = fw("x2 x3^-1 x1");
        let inner = artin_apply(&b("2", 3), &w).unwrap();
        let outer = artin_apply(&b("1", 3), &inner).unwrap();
        assert_eq!(artin_apply(&b("1 2", 3), &w).unwrap(), outer);
    }

    #[test]
    fn product_of_generators_is_fixed() {
        let full = fw("x1 x2 x3");
        for word in ["1", "-2", "1 2 -1 2 2", "-2 -1 -1 2"] {
            assert_eq!(artin_apply(&b(word, 3), &full).unwrap(), full, "{word}");
        }
    }

    #[test]
    fn longitudes() {
        let trivial = longitudes_from_pure_braid(&BraidWord::identity(3)).unwrap();
        assert!(trivial.longitudes.iter().all(FreeWord::is_empty));
        let hopf = longitudes_from_pure_braid(&b("1 1", 2)).unwrap();
        assert_eq!(hopf.longitudes[0], fw("x2"));
        assert_eq!(longitude_linking(&hopf, 1, 2), 1);
        let borromean = longitudes_from_pure_braid(&b("1 -2 1 -2 1 -2", 3)).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(longitude_linking(&borromean, i, j), 0);
            }
        }
        assert_eq!(longitudes_from_pure_braid(&b("1", 2)), Err(MilnorError::NotPure));
    }
}
