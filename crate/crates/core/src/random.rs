//! Seeded generators for the randomized suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{closure_summary, BraidWord, Letter, MixedBraid};
use crate::gauss::{apply_move, r3_candidates, GaussDiagram, MoveSpec, Token};
use crate::seifert::{trefoil_sum_seifert, BlockSeifert, IntMatrix};

pub type SuiteRng = ChaCha8Rng;

/// Independent generator for case `case` of a suite run with `seed`.
pub fn case_rng(seed: u64, case: u64) -> SuiteRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn sign(rng: &mut impl Rng) -> i8 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

fn random_entries(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-bound..=bound))
}

/// Apply up to `steps` random elementary row or column operations, skipping
/// any that would push an entry outside `[-bound, bound]`. Every operation
/// has determinant ±1.
pub fn scramble_unimodular(rng: &mut impl Rng, m: &IntMatrix, steps: usize, bound: i64) -> IntMatrix {
    let n = m.rows();
    let mut rows = m.to_rows();
    if n == 0 {
        return m.clone();
    }
    for _ in 0..steps {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let by_columns = rng.gen_bool(0.5);
        let mut next = if by_columns {
            IntMatrix::from_rows(rows.clone()).unwrap().transpose().to_rows()
        } else {
            rows.clone()
        };
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = i64::from(sign(rng));
                let source = next[j].clone();
                next[i].iter_mut().zip(source).for_each(|(a, b)| *a += c * b);
            }
            1 => next.swap(i, j),
            _ => next[i].iter_mut().for_each(|a| *a = -*a),
        }
        if next.iter().flatten().all(|x| x.abs() <= bound) {
            rows = if by_columns {
                IntMatrix::from_rows(next).unwrap().transpose().to_rows()
            } else {
                next
            };
        }
    }
    IntMatrix::from_rows(rows).unwrap()
}

/// Random unimodular `n × n` matrix with entries in `[-bound, bound]`.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, bound: i64) -> IntMatrix {
    scramble_unimodular(rng, &IntMatrix::identity(n), 20, bound)
}

/// Block Seifert data with `1 ≤ g_J ≤ max_genus`, `0 ≤ g_K ≤ max_genus`,
/// entries in `[-bound, bound]` and `A_J` a scrambled trefoil sum.
pub fn random_block_seifert(rng: &mut impl Rng, max_genus: usize, bound: i64) -> BlockSeifert {
    let g_j = rng.gen_range(1..=max_genus.max(1));
    let g_k = rng.gen_range(0..=max_genus);
    let a_j = scramble_unimodular(rng, &trefoil_sum_seifert(g_j), 20, bound);
    let a_k = random_entries(rng, 2 * g_k, 2 * g_k, bound);
    let b = random_entries(rng, 2 * g_j, 2 * g_k, bound);
    BlockSeifert::new(a_j, a_k, b).expect("shapes agree by construction")
}

/// Integer vector of length `len` with entries in `[-bound, bound]`.
pub fn random_vector(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// Uniform random signed chord diagram with `chords` chords.
pub fn random_gauss_diagram(rng: &mut impl Rng, chords: usize) -> GaussDiagram {
    let mut tokens = Vec::with_capacity(2 * chords);
    for id in 1..=chords as u32 {
        let s = sign(rng);
        tokens.push(Token::over(id, s));
        tokens.push(Token::under(id, s));
    }
    tokens.shuffle(rng);
    GaussDiagram::from_tokens(tokens).expect("every chord has both endpoints")
}

/// Random braid on `strands` strands with `len` letters.
pub fn random_braid(rng: &mut impl Rng, strands: usize, len: usize) -> BraidWord {
    if strands < 2 {
        return BraidWord::identity(strands.max(1));
    }
    let letters = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..strands), sign(rng)))
        .collect();
    BraidWord::new(strands, letters).expect("indices in range")
}

/// Random braid whose closure is a knot, on at most `max_strands` strands
/// and with at most `max_len` letters.
pub fn random_knot_braid(rng: &mut impl Rng, max_strands: usize, max_len: usize) -> BraidWord {
    for _ in 0..64 {
        let strands = rng.gen_range(1..=max_strands.max(1));
        let len = rng.gen_range(0..=max_len);
        let b = random_braid(rng, strands, len);
        if closure_summary(&b).components == 1 {
            return b;
        }
    }
    BraidWord::identity(1)
}

/// Gauss diagram of the closure of a braid whose closure is a knot, read
/// along the closed strand starting from the top of strand 1. The crossing
/// sign is the letter sign.
pub fn closed_braid_diagram(b: &BraidWord) -> GaussDiagram {
    let letters = b.letters();
    let mut tokens = Vec::with_capacity(2 * letters.len());
    let mut position = 0;
    loop {
        for (k, l) in letters.iter().enumerate() {
            let left = l.index - 1;
            if position != left && position != l.index {
                continue;
            }
            // The positive generator carries the left strand over.
            let on_top = (position == left) == (l.sign > 0);
            let id = k as u32 + 1;
            tokens.push(if on_top {
                Token::over(id, l.sign)
            } else {
                Token::under(id, l.sign)
            });
            position = if position == left { l.index } else { left };
        }
        if position == 0 {
            break;
        }
    }
    GaussDiagram::from_tokens(tokens).expect("closure of a knot braid visits each crossing twice")
}

/// Mix of uniform chord diagrams and closed-braid diagrams, at most
/// `max_chords` chords.
pub fn random_mixed_diagram(rng: &mut impl Rng, max_chords: usize) -> GaussDiagram {
    if rng.gen_bool(0.5) {
        let chords = rng.gen_range(0..=max_chords);
        random_gauss_diagram(rng, chords)
    } else {
        closed_braid_diagram(&random_knot_braid(rng, 4, max_chords))
    }
}

fn kink_chords(d: &GaussDiagram) -> Vec<u32> {
    d.chords()
        .into_iter()
        .filter(|&c| apply_move(d, MoveSpec::R1Delete { chord: c }).is_ok())
        .collect()
}

fn bigon_pairs(d: &GaussDiagram) -> Vec<(u32, u32)> {
    let chords = d.chords();
    let mut out = Vec::new();
    for (k, &a) in chords.iter().enumerate() {
        for &b in &chords[k + 1..] {
            if apply_move(d, MoveSpec::R2Delete { first: a, second: b }).is_ok() {
                out.push((a, b));
            }
        }
    }
    out
}

/// Pick and apply a random extended Reidemeister move. Available R3 moves are
/// preferred, deletions become likelier as the diagram grows past
/// `soft_size` chords, and insertions are always available as a fallback.
pub fn random_move(rng: &mut impl Rng, d: &GaussDiagram, soft_size: usize) -> (MoveSpec, GaussDiagram) {
    let triangles = r3_candidates(d);
    if !triangles.is_empty() && rng.gen_bool(0.5) {
        let chords = *triangles.choose(rng).unwrap();
        let m = MoveSpec::R3 { chords };
        return (m, apply_move(d, m).expect("candidate is movable"));
    }
    let shrink = d.chord_count() > soft_size || rng.gen_bool(0.3);
    if shrink {
        let kinks = kink_chords(d);
        let bigons = bigon_pairs(d);
        let m = match (kinks.choose(rng), bigons.choose(rng)) {
            (Some(&chord), Some(&(first, second))) => {
                if rng.gen_bool(0.5) {
                    MoveSpec::R1Delete { chord }
                } else {
                    MoveSpec::R2Delete { first, second }
                }
            }
            (Some(&chord), None) => MoveSpec::R1Delete { chord },
            (None, Some(&(first, second))) => MoveSpec::R2Delete { first, second },
            (None, None) => random_insertion(rng, d),
        };
        return (m, apply_move(d, m).expect("deletion candidates are applicable"));
    }
    let m = random_insertion(rng, d);
    (m, apply_move(d, m).expect("insertions always apply"))
}

fn random_insertion(rng: &mut impl Rng, d: &GaussDiagram) -> MoveSpec {
    let n = d.len();
    if rng.gen_bool(0.4) {
        MoveSpec::R1Insert {
            position: rng.gen_range(0..=n),
            sign: sign(rng),
            over_first: rng.gen_bool(0.5),
        }
    } else {
        MoveSpec::R2Insert {
            over_slot: rng.gen_range(0..=n),
            under_slot: rng.gen_range(0..=n),
            sign: sign(rng),
            reversed: rng.gen_bool(0.5),
        }
    }
}

/// Parted mixed braid with `fixed` strands and a moving knot on `moving`
/// strands. The moving knot winds around the fixed strands through squared
/// generators, so any linking pattern can occur.
pub fn random_mixed_braid(rng: &mut impl Rng, fixed: usize, moving: usize, len: usize) -> MixedBraid {
    let total = fixed + moving;
    let mut letters = Vec::new();
    for _ in 0..len {
        match rng.gen_range(0..3) {
            0 if fixed > 1 => letters.push(Letter::new(rng.gen_range(1..fixed), sign(rng))),
            1 => {
                let l = Letter::new(fixed, sign(rng));
                letters.extend([l, l]);
            }
            _ if moving > 1 => letters.push(Letter::new(rng.gen_range(fixed + 1..total), sign(rng))),
            _ => {}
        }
    }
    // Close the moving strands into one cycle.
    for i in fixed + 1..total {
        letters.push(Letter::new(i, sign(rng)));
    }
    let mut word = BraidWord::new(total, letters).expect("indices in range");
    // Moving-only letters may have split the cycle; rebuild from the fixed
    // part and the squares alone if so.
    let summary = closure_summary(&word);
    if summary.strands_of(summary.component_of[fixed]).len() != moving {
        let kept = word
            .letters()
            .iter()
            .copied()
            .filter(|l| l.index <= fixed)
            .chain((fixed + 1..total).map(|i| Letter::new(i, 1)))
            .collect();
        word = BraidWord::new(total, kept).expect("indices in range");
    }
    MixedBraid {
        fixed,
        added: 0,
        moving,
        word,
        parted: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::total_intersection;
    use crate::gauss::{index_report, is_almost_classical, writhe_index_polynomial};
    use crate::seifert::det_int;
    use num_bigint::BigInt;

    #[test]
    fn seeded_streams_are_reproducible_and_distinct() {
        let a: u64 = case_rng(7, 3).gen();
        let b: u64 = case_rng(7, 3).gen();
        let c: u64 = case_rng(7, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn unimodular_generation() {
        let mut rng = case_rng(1, 0);
        for _ in 0..50 {
            let m = random_unimodular(&mut rng, 4, 3);
            assert_eq!(det_int(&m).unwrap().magnitude(), BigInt::from(1).magnitude());
            let bs = random_block_seifert(&mut rng, 2, 3);
            assert_eq!(det_int(bs.a_j()).unwrap().magnitude(), BigInt::from(1).magnitude());
            assert!(bs.assembled().to_rows().iter().flatten().all(|x| x.abs() <= 3));
        }
    }

    #[test]
    fn closed_braids_are_classical() {
        let trefoil = closed_braid_diagram(&BraidWord::parse("1 1 1", 2).unwrap());
        assert_eq!(trefoil.to_string(), "O1+,U2+,O3+,U1+,O2+,U3+");
        let mut rng = case_rng(2, 0);
        for _ in 0..200 {
            let d = closed_braid_diagram(&random_knot_braid(&mut rng, 4, 8));
            assert!(is_almost_classical(&d), "{d}");
            assert!(index_report(&d).entries.iter().all(|e| e.index == 0));
        }
    }

    #[test]
    fn move_walk_keeps_polynomial() {
        let mut rng = case_rng(3, 0);
        let mut d = random_gauss_diagram(&mut rng, 4);
        let p = writhe_index_polynomial(&d);
        for _ in 0..100 {
            d = random_move(&mut rng, &d, 8).1;
            assert_eq!(writhe_index_polynomial(&d), p);
        }
    }

    #[test]
    fn mixed_braids_validate() {
        let mut rng = case_rng(4, 0);
        for _ in 0..100 {
            let fixed = rng.gen_range(1..=3);
            let moving = rng.gen_range(1..=3);
            let mb = random_mixed_braid(&mut rng, fixed, moving, 10);
            assert!(total_intersection(&mb).is_ok(), "{}", mb.to_json());
        }
    }
}
