use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::PolyError;

/// Integer power series in noncommuting symbols `h1, h2, ...`, truncated at a
/// fixed degree. Words are sequences of 1-based symbol indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NoncommSeries {
    degree: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl NoncommSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.terms.insert(Vec::new(), 1);
        s
    }

    /// The single symbol `h_i`.
    pub fn symbol(i: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.add_term(vec![i], 1);
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &i64)> {
        self.terms.iter()
    }

    fn add_term(&mut self, word: Vec<usize>, c: i64) {
        if c == 0 || word.len() > self.degree {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// Coefficient of the word `h_{w[0]} h_{w[1]} ...`.
    pub fn coeff(&self, word: &[usize]) -> Result<i64, PolyError> {
        if word.len() > self.degree {
            return Err(PolyError::WordTooLong {
                len: word.len(),
                degree: self.degree,
            });
        }
        Ok(self.terms.get(word).copied().unwrap_or(0))
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::zero(self.degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }
}

/// Magnus expansion of a free-group word given as `(generator, ±1)` letters:
/// `m_i -> 1 + h_i` and `m_i^-1 -> 1 - h_i + h_i^2 - ...`, truncated at `degree`.
pub fn magnus_expand(letters: &[(usize, i8)], degree: usize) -> NoncommSeries {
    letters.iter().fold(NoncommSeries::one(degree), |acc, &(g, e)| {
        &acc * &letter_series(g, e, degree)
    })
}

fn letter_series(g: usize, e: i8, degree: usize) -> NoncommSeries {
    let mut s = NoncommSeries::one(degree);
    if e > 0 {
        s.add_term(vec![g], 1);
    } else {
        for j in 1..=degree {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            s.add_term(vec![g; j], sign);
        }
    }
    s
}

impl Add for &NoncommSeries {
    type Output = NoncommSeries;
    fn add(self, rhs: &NoncommSeries) -> NoncommSeries {
        let mut out = self.clone();
        out.degree = self.degree.min(rhs.degree);
        out.terms.retain(|w, _| w.len() <= out.degree);
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }
}

impl Neg for &NoncommSeries {
    type Output = NoncommSeries;
    fn neg(self) -> NoncommSeries {
        self.scaled(-1)
    }
}

impl Sub for &NoncommSeries {
    type Output = NoncommSeries;
    fn sub(self, rhs: &NoncommSeries) -> NoncommSeries {
        self + &(-rhs)
    }
}

impl Mul for &NoncommSeries {
    type Output = NoncommSeries;
    fn mul(self, rhs: &NoncommSeries) -> NoncommSeries {
        let degree = self.degree.min(rhs.degree);
        let mut out = NoncommSeries::zero(degree);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                if wa.len() + wb.len() > degree {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for NoncommSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then(a.cmp(b)));
        for (k, (w, c)) in keys.into_iter().enumerate() {
            match (k, *c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.unsigned_abs();
            let mono: Vec<String> = w.iter().map(|i| format!("h{i}")).collect();
            match (mono.is_empty(), abs == 1) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono.join("*"))?,
                (false, false) => write!(f, "{abs}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_word_is_one() {
        assert_eq!(magnus_expand(&[], 2), NoncommSeries::one(2));
    }

    #[test]
    fn commutator_expansion() {
        let s = magnus_expand(&[(1, 1), (2, 1), (1, -1), (2, -1)], 2);
        assert_eq!(s.to_string(), "1 + h1*h2 - h2*h1");
        assert_eq!(s.coeff(&[1, 2]), Ok(1));
        assert_eq!(s.coeff(&[2, 1]), Ok(-1));
        assert_eq!(s.coeff(&[1]), Ok(0));
    }

    #[test]
    fn cube_expansion() {
        let s = magnus_expand(&[(1, 1), (1, 1), (1, 1)], 2);
        assert_eq!(s.to_string(), "1 + 3*h1 + 3*h1*h1");
    }

    #[test]
    fn coefficient_lookup() {
        assert_eq!(NoncommSeries::one(2).coeff(&[1]), Ok(0));
        assert_eq!(magnus_expand(&[(2, 1), (3, 1)], 2).coeff(&[2, 3]), Ok(1));
        assert_eq!(
            NoncommSeries::one(2).coeff(&[1, 1, 1]),
            Err(PolyError::WordTooLong { len: 3, degree: 2 })
        );
    }

    #[test]
    fn inverse_series_to_higher_degree() {
        let s = magnus_expand(&[(1, -1)], 4);
        assert_eq!(s.to_string(), "1 - h1 + h1*h1 - h1*h1*h1 + h1*h1*h1*h1");
        assert_eq!(magnus_expand(&[(1, -1), (1, 1)], 4), NoncommSeries::one(4));
    }

    fn word() -> impl Strategy<Value = Vec<(usize, i8)>> {
        prop::collection::vec((1usize..=3, prop::bool::ANY), 0..12)
            .prop_map(|v| v.into_iter().map(|(g, pos)| (g, if pos { 1 } else { -1 })).collect())
    }

    proptest! {
        #[test]
        fn expansion_is_multiplicative(a in word(), b in word(), d in 1usize..4) {
            let mut ab = a.clone();
            ab.extend_from_slice(&b);
            prop_assert_eq!(magnus_expand(&ab, d), &magnus_expand(&a, d) * &magnus_expand(&b, d));
        }

        #[test]
        fn word_times_inverse_is_one(a in word(), d in 1usize..4) {
            let mut w = a.clone();
            w.extend(a.iter().rev().map(|&(g, e)| (g, -e)));
            prop_assert_eq!(magnus_expand(&w, d), NoncommSeries::one(d));
        }

        #[test]
        fn multiplication_associates(a in word(), b in word(), c in word()) {
            let (x, y, z) = (magnus_expand(&a, 3), magnus_expand(&b, 3), magnus_expand(&c, 3));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }
    }
}
