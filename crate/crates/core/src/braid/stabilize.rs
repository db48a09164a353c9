use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{closure_summary, stallings_homogenize, BraidError, BraidWord, ClosureSummary, Letter};

/// A braid whose strands are split into a fixed part (positions `1..=fixed`),
/// added strands (the next `added`) and moving strands (the last `moving`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedBraid {
    pub fixed: usize,
    pub added: usize,
    pub moving: usize,
    pub word: BraidWord,
    pub parted: bool,
}

#[derive(Serialize, Deserialize)]
struct MixedBraidJson {
    m: usize,
    k: usize,
    n: usize,
    word: String,
    parted: bool,
}

impl MixedBraid {
    pub fn from_json(text: &str) -> Result<Self, BraidError> {
        let raw: MixedBraidJson = serde_json::from_str(text).map_err(|e| BraidError::Syntax(e.to_string()))?;
        let word = BraidWord::parse(&raw.word, raw.m + raw.k + raw.n)?;
        Ok(Self {
            fixed: raw.m,
            added: raw.k,
            moving: raw.n,
            word,
            parted: raw.parted,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MixedBraidJson {
            m: self.fixed,
            k: self.added,
            n: self.moving,
            word: self.word.to_string(),
            parted: self.parted,
        })
        .expect("plain struct serializes")
    }

    fn moving_strands(&self) -> BTreeSet<usize> {
        (self.fixed + self.added..self.fixed + self.added + self.moving).collect()
    }

    /// Check the partition and return the closure summary together with the
    /// component of the moving knot.
    fn validate(&self) -> Result<(ClosureSummary, usize), BraidError> {
        if !self.parted {
            return Err(BraidError::NotParted("input is flagged as not parted".into()));
        }
        if self.fixed == 0 {
            return Err(BraidError::NotParted("at least one fixed strand is required".into()));
        }
        let total = self.fixed + self.added + self.moving;
        if self.word.strands() != total {
            return Err(BraidError::NotParted(format!(
                "word has {} strands, partition has {total}",
                self.word.strands()
            )));
        }
        if self.moving == 0 {
            return Err(BraidError::MovingPartNotKnot);
        }
        let summary = closure_summary(&self.word);
        let moving = self.moving_strands();
        let knot = summary.component_of[self.fixed + self.added];
        if summary.strands_of(knot).into_iter().collect::<BTreeSet<_>>() != moving {
            return Err(BraidError::MovingPartNotKnot);
        }
        Ok((summary, knot))
    }
}

/// Sum of the linking numbers of the moving knot with every other component.
pub fn total_intersection(mb: &MixedBraid) -> Result<i64, BraidError> {
    let (summary, knot) = mb.validate()?;
    Ok((0..summary.components)
        .filter(|&c| c != knot)
        .map(|c| summary.lk(knot, c))
        .sum())
}

/// Add an unknotted component `J0` so that the fixed part together with `J0`
/// closes to a homogeneous (hence fibered) braid, then twist the moving knot
/// around `J0` until its total linking with that fibered link vanishes.
pub fn fiber_stabilize(mb: &MixedBraid) -> Result<MixedBraid, BraidError> {
    mb.validate()?;
    let mut out = if mb.added == 0 {
        merge_homogenized(mb)
    } else {
        mb.clone()
    };
    let total = total_intersection(&out)?;
    if total != 0 {
        let interface = out.fixed + out.added;
        let sign: i8 = if total > 0 { -1 } else { 1 };
        let mut letters = out.word.letters().to_vec();
        for _ in 0..total.unsigned_abs() {
            letters.extend([Letter::new(interface, sign); 2]);
        }
        out.word = BraidWord::new(out.word.strands(), letters).expect("interface index in range");
    }
    Ok(out)
}

/// Word built crossing by crossing while tracking where every strand sits.
struct Weaver {
    /// Full strand id at each position.
    order: Vec<usize>,
    letters: Vec<Letter>,
    fixed: usize,
    added: usize,
}

impl Weaver {
    fn is_added(&self, id: usize) -> bool {
        (self.fixed..self.fixed + self.added).contains(&id)
    }

    fn is_moving(&self, id: usize) -> bool {
        id >= self.fixed + self.added
    }

    fn position(&self, id: usize) -> usize {
        self.order.iter().position(|&s| s == id).expect("strand present")
    }

    /// Cross positions `p` and `p + 1` (0-based).
    fn cross(&mut self, p: usize, sign: i8) {
        self.letters.push(Letter::new(p + 1, sign));
        self.order.swap(p, p + 1);
    }

    /// Bring strands `left` and `right` together by moving `traveler` (one of
    /// them) across everything between, then cross them with `sign`.
    /// `over_right`/`over_left` give the sign used when the traveler moves
    /// right or left past an intermediate strand.
    fn meet(&mut self, left: usize, right: usize, traveler: usize, over_right: i8, over_left: i8, sign: i8) {
        if traveler == left {
            while self.order[self.position(left) + 1] != right {
                let p = self.position(left);
                self.cross(p, over_right);
            }
        } else {
            while self.order[self.position(right) - 1] != left {
                let p = self.position(right);
                self.cross(p - 1, over_left);
            }
        }
        let p = self.position(left);
        debug_assert_eq!(self.order[p + 1], right);
        self.cross(p, sign);
    }
}

/// Homogenize the fixed part and weave its added strands under the moving
/// strands.
fn merge_homogenized(mb: &MixedBraid) -> MixedBraid {
    let (f, n) = (mb.fixed, mb.moving);
    let moving = mb.moving_strands();
    let (fixed_part, kept) = mb.word.delete_strands_tracked(&moving);
    let mut h = stallings_homogenize(&fixed_part);
    if h.added == 0 {
        // Plumb a Hopf band onto the last fixed strand to supply J0.
        let mut letters = h.result.letters().to_vec();
        letters.extend([Letter::new(f, 1); 2]);
        h.result = BraidWord::new(f + 1, letters).expect("σ_f fits on f + 1 strands");
        h.origin.extend([None, None]);
        h.added = 1;
    }
    let k = h.added;
    let total = f + k + n;
    let full_id = |w_strand: usize| if w_strand < f { w_strand } else { w_strand + k };

    let mut weave = Weaver {
        order: (0..total).collect(),
        letters: Vec::new(),
        fixed: f,
        added: k,
    };
    let mut w_at: Vec<usize> = (0..f + n).map(full_id).collect();
    let mut b_at: Vec<usize> = (0..f + k).collect();
    let b_letters = h.result.letters();
    let mut next_b = 0;

    let emit_b = |weave: &mut Weaver, b_at: &mut Vec<usize>, l: Letter| {
        let (x, y) = (b_at[l.index - 1], b_at[l.index]);
        b_at.swap(l.index - 1, l.index);
        let traveler = if weave.is_added(x) { x } else { y };
        // An added strand passes under moving strands: -1 moving right, +1 moving left.
        weave.meet(x, y, traveler, -1, 1, l.sign);
    };

    for (w_index, l) in mb.word.letters().iter().enumerate() {
        let (x, y) = (w_at[l.index - 1], w_at[l.index]);
        w_at.swap(l.index - 1, l.index);
        if weave.is_moving(x) || weave.is_moving(y) {
            let traveler = if weave.is_moving(x) { x } else { y };
            // A moving strand passes over added strands: +1 moving right, -1 moving left.
            weave.meet(x, y, traveler, 1, -1, l.sign);
            continue;
        }
        let b_index = kept.binary_search(&w_index).expect("fixed crossing survives deletion");
        let target = h
            .origin
            .iter()
            .position(|&o| o == Some(b_index))
            .expect("every input letter has an image");
        while next_b <= target {
            emit_b(&mut weave, &mut b_at, b_letters[next_b]);
            next_b += 1;
        }
    }
    while next_b < b_letters.len() {
        emit_b(&mut weave, &mut b_at, b_letters[next_b]);
        next_b += 1;
    }
    // Restore added strands to the left of moving ones, moving strands on top.
    while let Some(p) = (0..total - 1).find(|&p| weave.is_moving(weave.order[p]) && weave.is_added(weave.order[p + 1]))
    {
        weave.cross(p, 1);
    }
    let word = BraidWord::new(total, weave.letters).expect("letters stay in range");
    MixedBraid {
        fixed: f,
        added: k,
        moving: n,
        word,
        parted: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::is_homogeneous;

    fn mixed(m: usize, n: usize, word: &str) -> MixedBraid {
        MixedBraid {
            fixed: m,
            added: 0,
            moving: n,
            word: BraidWord::parse(word, m + n).unwrap(),
            parted: true,
        }
    }

    fn fixed_added(mb: &MixedBraid) -> BraidWord {
        let moving: BTreeSet<usize> = (mb.fixed + mb.added..mb.word.strands()).collect();
        mb.word.delete_strands(&moving)
    }

    #[test]
    fn split_case_needs_no_twists() {
        let mb = mixed(1, 1, "");
        assert_eq!(total_intersection(&mb), Ok(0));
        let out = fiber_stabilize(&mb).unwrap();
        assert_eq!(out.added, 1);
        assert_eq!(total_intersection(&out), Ok(0));
        assert!(is_homogeneous(&fixed_added(&out)));
        assert!(!out.word.letters().iter().any(|l| l.index == 2));
    }

    #[test]
    fn trefoil_with_winding_strand() {
        let mb = mixed(2, 1, "1 1 1 2 2 2 2");
        assert_eq!(total_intersection(&mb), Ok(2));
        let out = fiber_stabilize(&mb).unwrap();
        assert_eq!(out.added, 1);
        let tail: Vec<Letter> = out.word.letters().iter().rev().take(4).copied().collect();
        assert_eq!(tail, vec![Letter::new(3, -1); 4]);
        let before_twists = out.word.letters().len() - 4;
        let untwisted = MixedBraid {
            word: BraidWord::new(4, out.word.letters()[..before_twists].to_vec()).unwrap(),
            ..out.clone()
        };
        assert_eq!(total_intersection(&untwisted), Ok(2));
        assert_eq!(total_intersection(&out), Ok(0));
        assert_eq!(fiber_stabilize(&out).unwrap(), out);
    }

    #[test]
    fn deleting_moving_strands_gives_homogenized_fixed_part() {
        let mb = mixed(3, 1, "1 -2 3 3 -1 2 -3 -3 1 -3 -3 2");
        let fixed_part = mb.word.delete_strands(&BTreeSet::from([3]));
        let expected = stallings_homogenize(&fixed_part).result;
        let out = fiber_stabilize(&mb).unwrap();
        assert_eq!(fixed_added(&out), expected);
        let added: BTreeSet<usize> = (3..3 + out.added).collect();
        let twists = 2 * total_intersection(&merge_homogenized(&mb)).unwrap().unsigned_abs() as usize;
        let untwisted = BraidWord::new(
            out.word.strands(),
            out.word.letters()[..out.word.len() - twists].to_vec(),
        )
        .unwrap();
        assert_eq!(untwisted.delete_strands(&added), mb.word);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(fiber_stabilize(&mixed(1, 2, "")), Err(BraidError::MovingPartNotKnot));
        assert_eq!(fiber_stabilize(&mixed(1, 1, "1")), Err(BraidError::MovingPartNotKnot));
        let unparted = MixedBraid {
            parted: false,
            ..mixed(1, 1, "")
        };
        assert!(matches!(fiber_stabilize(&unparted), Err(BraidError::NotParted(_))));
    }

    #[test]
    fn json_round_trip() {
        let mb = MixedBraid::from_json(r#"{"m": 2, "k": 0, "n": 1, "word": "1 1 1 2 2", "parted": true}"#).unwrap();
        assert_eq!(mb.word.strands(), 3);
        assert_eq!(MixedBraid::from_json(&mb.to_json()).unwrap(), mb);
        assert!(matches!(MixedBraid::from_json("{}"), Err(BraidError::Syntax(_))));
    }
}
