use super::{is_homogeneous, BraidWord, Letter};

/// Output of [`stallings_homogenize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homogenized {
    /// Braid on `m + added` strands; the added strands are the last `added`.
    pub result: BraidWord,
    pub added: usize,
    /// Sign of the first letter whose sign disagrees with the first
    /// occurrence of its generator (+1 when there is none).
    pub epsilon: i8,
    /// For each letter of `result`, the index of the input letter it comes
    /// from, or `None` for letters on added strands.
    pub origin: Vec<Option<usize>>,
}

/// Make a braid homogeneous by adding unknotted strands.
///
/// Every generator gets a "correct" sign: that of its first occurrence, or
/// `-ε` if it never occurs. A letter with the wrong sign is moved right by
/// dipping `r` added strands under or over the strands to its left, so that
/// it becomes a letter `σ_{i+r}` whose correct sign it carries. The added
/// strands then close into one unknot through `σ_{m+1}^{-ε} ⋯ σ_{m+k-1}^{-ε}`.
pub fn stallings_homogenize(b: &BraidWord) -> Homogenized {
    let m = b.strands();
    if is_homogeneous(b) {
        return Homogenized {
            result: b.clone(),
            added: 0,
            epsilon: 1,
            origin: (0..b.len()).map(Some).collect(),
        };
    }
    let mut first_sign: Vec<Option<i8>> = vec![None; m.saturating_sub(1)];
    let mut epsilon = None;
    for l in b.letters() {
        match first_sign[l.index - 1] {
            None => first_sign[l.index - 1] = Some(l.sign),
            Some(s) if s != l.sign && epsilon.is_none() => epsilon = Some(l.sign),
            Some(_) => {}
        }
    }
    let epsilon = epsilon.unwrap_or(1);
    // correct[j - 1] is the correct sign of σ_j, for j up to m + k - 1.
    let correct = |j: usize| -> i8 {
        if j < m {
            first_sign[j - 1].unwrap_or(-epsilon)
        } else if j == m {
            epsilon
        } else {
            -epsilon
        }
    };
    let first_absent = first_sign.iter().position(Option::is_none).map(|p| p + 1);

    let mut letters: Vec<Letter> = Vec::new();
    let mut origin: Vec<Option<usize>> = Vec::new();
    let mut added = usize::from(first_absent.is_some());

    let dip = |depth: usize, at: usize, letters: &mut Vec<Letter>, origin: &mut Vec<Option<usize>>| {
        // Added strand m+1+s walks left from position m+1+s to at+s.
        let mut down = Vec::new();
        for s in 0..depth {
            for j in (at + s..=m + s).rev() {
                down.push(Letter::new(j, correct(j)));
            }
        }
        origin.extend(std::iter::repeat_n(None, down.len()));
        letters.extend(down);
    };
    let undip = |depth: usize, at: usize, letters: &mut Vec<Letter>, origin: &mut Vec<Option<usize>>| {
        let mut up = Vec::new();
        for s in (0..depth).rev() {
            for j in at + s..=m + s {
                up.push(Letter::new(j, correct(j)));
            }
        }
        origin.extend(std::iter::repeat_n(None, up.len()));
        letters.extend(up);
    };

    if let Some(a) = first_absent {
        dip(1, a, &mut letters, &mut origin);
        undip(1, a, &mut letters, &mut origin);
    }
    for (k, l) in b.letters().iter().enumerate() {
        if l.sign == correct(l.index) {
            letters.push(*l);
            origin.push(Some(k));
            continue;
        }
        let r = (1..)
            .find(|&r| correct(l.index + r) == l.sign)
            .expect("σ_m and σ_{m+1} have opposite signs");
        added = added.max(r);
        dip(r, l.index, &mut letters, &mut origin);
        letters.push(Letter::new(l.index + r, l.sign));
        origin.push(Some(k));
        undip(r, l.index, &mut letters, &mut origin);
    }
    for j in m + 1..m + added {
        letters.push(Letter::new(j, -epsilon));
        origin.push(None);
    }
    let result = BraidWord::new(m + added, letters).expect("indices stay below m + added");
    Homogenized {
        result,
        added,
        epsilon,
        origin,
    }
}
