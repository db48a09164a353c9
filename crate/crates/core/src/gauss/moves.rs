use std::collections::HashSet;
use std::sync::OnceLock;

use super::{GaussDiagram, GaussError, Role, Token};

/// An extended Reidemeister move on a Gauss diagram. Virtual moves do not
/// change the diagram and have no representation here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveSpec {
    /// Insert a kink: two adjacent endpoints of a new chord before token
    /// `position` (`position == len` appends).
    R1Insert {
        position: usize,
        sign: i8,
        over_first: bool,
    },
    /// Remove a chord whose two endpoints are cyclically adjacent.
    R1Delete { chord: u32 },
    /// Insert two new chords `a` (sign `sign`) and `b` (sign `-sign`) sharing
    /// an over strand at `over_slot` and an under strand at `under_slot`. The
    /// under endpoints run `a, b` unless `reversed`. When both slots coincide
    /// the over pair comes first.
    R2Insert {
        over_slot: usize,
        under_slot: usize,
        sign: i8,
        reversed: bool,
    },
    /// Remove two opposite-signed chords whose Over endpoints are adjacent and
    /// whose Under endpoints are adjacent.
    R2Delete { first: u32, second: u32 },
    /// Slide a strand across the crossing of the other two in a triangle
    /// formed by the three chords.
    R3 { chords: [u32; 3] },
}

fn not_applicable(msg: impl Into<String>) -> GaussError {
    GaussError::MoveNotApplicable(msg.into())
}

fn require_sign(sign: i8) -> Result<(), GaussError> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(not_applicable(format!("sign must be +1 or -1, got {sign}")))
    }
}

/// Whether positions `a` and `b` are neighbours on the cycle of length `n`,
/// with `a` immediately before `b`.
fn directly_before(a: usize, b: usize, n: usize) -> bool {
    n > 1 && (a + 1) % n == b
}

fn adjacent(a: usize, b: usize, n: usize) -> bool {
    directly_before(a, b, n) || directly_before(b, a, n)
}

pub fn apply_move(d: &GaussDiagram, m: MoveSpec) -> Result<GaussDiagram, GaussError> {
    let n = d.len();
    let mut tokens = d.tokens().to_vec();
    match m {
        MoveSpec::R1Insert {
            position,
            sign,
            over_first,
        } => {
            require_sign(sign)?;
            if position > n {
                return Err(not_applicable(format!("position {position} beyond {n} tokens")));
            }
            let id = d.fresh_id();
            let (first, second) = if over_first {
                (Token::over(id, sign), Token::under(id, sign))
            } else {
                (Token::under(id, sign), Token::over(id, sign))
            };
            tokens.splice(position..position, [first, second]);
        }
        MoveSpec::R1Delete { chord } => {
            let (o, u) = d.endpoints(chord)?;
            if !adjacent(o, u, n) {
                return Err(not_applicable(format!("chord {chord} is not a kink")));
            }
            tokens.retain(|t| t.chord != chord);
        }
        MoveSpec::R2Insert {
            over_slot,
            under_slot,
            sign,
            reversed,
        } => {
            require_sign(sign)?;
            if over_slot > n || under_slot > n {
                return Err(not_applicable(format!("slot beyond {n} tokens")));
            }
            let a = d.fresh_id();
            let b = a + 1;
            let over = [Token::over(a, sign), Token::over(b, -sign)];
            let under = if reversed {
                [Token::under(b, -sign), Token::under(a, sign)]
            } else {
                [Token::under(a, sign), Token::under(b, -sign)]
            };
            // Insert at the later slot first so the earlier index stays valid.
            if under_slot >= over_slot {
                tokens.splice(under_slot..under_slot, under);
                tokens.splice(over_slot..over_slot, over);
            } else {
                tokens.splice(over_slot..over_slot, over);
                tokens.splice(under_slot..under_slot, under);
            }
        }
        MoveSpec::R2Delete { first, second } => {
            if first == second {
                return Err(not_applicable("R2 needs two distinct chords"));
            }
            let (oa, ua) = d.endpoints(first)?;
            let (ob, ub) = d.endpoints(second)?;
            if d.sign(first)? == d.sign(second)? {
                return Err(not_applicable("R2 chords must have opposite signs"));
            }
            if !adjacent(oa, ob, n) || !adjacent(ua, ub, n) {
                return Err(not_applicable("R2 chords must have adjacent endpoints"));
            }
            tokens.retain(|t| t.chord != first && t.chord != second);
        }
        MoveSpec::R3 { chords } => {
            let triangle = find_triangle(d, chords)?
                .ok_or_else(|| not_applicable(format!("chords {chords:?} do not form a movable triangle")))?;
            for (p, q) in triangle.pairs {
                tokens.swap(p, q);
            }
        }
    }
    GaussDiagram::from_tokens(tokens)
}

/// A located triangle: chord `x` joins top and middle strands, `y` top and
/// bottom, `z` middle and bottom.
struct Triangle {
    /// Position pairs on the top, middle and bottom strands.
    pairs: [(usize, usize); 3],
}

/// Signs of `x, y, z` and, per strand, whether the first-named endpoint comes
/// first: `O_x` before `O_y`, `U_x` before `O_z`, `U_y` before `U_z`.
type TriangleShape = ([i8; 3], [bool; 3]);

fn find_triangle(d: &GaussDiagram, chords: [u32; 3]) -> Result<Option<Triangle>, GaussError> {
    let [a, b, c] = chords;
    if a == b || b == c || a == c {
        return Err(not_applicable("R3 needs three distinct chords"));
    }
    let n = d.len();
    for [x, y, z] in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
        let (ox, ux) = d.endpoints(x)?;
        let (oy, uy) = d.endpoints(y)?;
        let (oz, uz) = d.endpoints(z)?;
        let pairs = [(ox, oy), (ux, oz), (uy, uz)];
        if !pairs.iter().all(|&(p, q)| adjacent(p, q, n)) {
            continue;
        }
        let signs = [d.sign(x)?, d.sign(y)?, d.sign(z)?];
        let orders = pairs.map(|(p, q)| directly_before(p, q, n));
        if realizable_shapes().contains(&(signs, orders)) {
            return Ok(Some(Triangle { pairs }));
        }
    }
    Ok(None)
}

/// Triples of chords that currently admit an R3 move.
pub fn r3_candidates(d: &GaussDiagram) -> Vec<[u32; 3]> {
    let n = d.len();
    let tokens = d.tokens();
    let mut found = Vec::new();
    let mut seen = HashSet::new();
    for p in 0..n {
        let q = (p + 1) % n;
        if n < 6 || tokens[p].role != Role::Over || tokens[q].role != Role::Over {
            continue;
        }
        for other in d.chords() {
            let (s, t) = (tokens[p].chord, tokens[q].chord);
            if other == s || other == t {
                continue;
            }
            let mut key = [s, t, other];
            key.sort_unstable();
            if seen.contains(&key) {
                continue;
            }
            if let Ok(Some(_)) = find_triangle(d, key) {
                seen.insert(key);
                found.push(key);
            }
        }
    }
    found
}

/// Sign/order patterns that occur in an actual triangle of three strands.
///
/// Enumerated from three lines through the vertices of a fixed triangle, over
/// all orientations and all assignments of top/middle/bottom. Sliding a strand
/// across the opposite vertex reverses every order, and a mirror image flips
/// every sign, so both closures are included.
fn realizable_shapes() -> &'static HashSet<TriangleShape> {
    static SHAPES: OnceLock<HashSet<TriangleShape>> = OnceLock::new();
    SHAPES.get_or_init(|| {
        // Lines y = 0, x = 0 and x + y = 1, with their pairwise meeting points.
        let dirs: [[i64; 2]; 3] = [[1, 0], [0, 1], [1, -1]];
        let meet = |i: usize, j: usize| -> [i64; 2] {
            match (i.min(j), i.max(j)) {
                (0, 1) => [0, 0],
                (0, 2) => [1, 0],
                _ => [0, 1],
            }
        };
        let roles = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut shapes = HashSet::new();
        for [top, mid, bot] in roles {
            for mask in 0..8 {
                let dir = |line: usize| {
                    let s = if mask >> line & 1 == 1 { -1 } else { 1 };
                    [dirs[line][0] * s, dirs[line][1] * s]
                };
                let cross = |over: usize, under: usize| {
                    let (a, b) = (dir(over), dir(under));
                    if a[0] * b[1] - a[1] * b[0] > 0 {
                        1i8
                    } else {
                        -1
                    }
                };
                // Along `line`, does its meeting with `first` come before its meeting with `second`?
                let before = |line: usize, first: usize, second: usize| {
                    let v = dir(line);
                    let (p, q) = (meet(line, first), meet(line, second));
                    p[0] * v[0] + p[1] * v[1] < q[0] * v[0] + q[1] * v[1]
                };
                let signs = [cross(top, mid), cross(top, bot), cross(mid, bot)];
                let orders = [before(top, mid, bot), before(mid, top, bot), before(bot, top, mid)];
                for s in [1i8, -1] {
                    let signs = signs.map(|x| x * s);
                    shapes.insert((signs, orders));
                    shapes.insert((signs, orders.map(|o| !o)));
                }
            }
        }
        shapes
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{index, writhe_index_polynomial};

    fn g(s: &str) -> GaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn r1_round_trip() {
        let one = apply_move(
            &GaussDiagram::empty(),
            MoveSpec::R1Insert {
                position: 0,
                sign: 1,
                over_first: true,
            },
        )
        .unwrap();
        assert_eq!(one.to_string(), "O1+,U1+");
        assert_eq!(
            apply_move(&one, MoveSpec::R1Delete { chord: 1 }).unwrap(),
            GaussDiagram::empty()
        );
        let v = g("O1+,O2+,U1+,U2+");
        assert!(matches!(
            apply_move(&v, MoveSpec::R1Delete { chord: 1 }),
            Err(GaussError::MoveNotApplicable(_))
        ));
    }

    #[test]
    fn r1_kink_across_the_seam() {
        let d = g("U3-,O1+,O2+,U1+,U2+,O3-");
        let back = apply_move(&d, MoveSpec::R1Delete { chord: 3 }).unwrap();
        assert_eq!(back.to_string(), "O1+,O2+,U1+,U2+");
    }

    #[test]
    fn r2_round_trip() {
        let v = g("O1+,O2+,U1+,U2+");
        for (over_slot, under_slot, reversed) in [(0, 2, false), (3, 1, true), (2, 2, false), (4, 0, true)] {
            let m = MoveSpec::R2Insert {
                over_slot,
                under_slot,
                sign: -1,
                reversed,
            };
            let big = apply_move(&v, m).unwrap();
            assert_eq!(big.chord_count(), 4);
            let back = apply_move(&big, MoveSpec::R2Delete { first: 3, second: 4 }).unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn r2_delete_requires_opposite_signs() {
        let d = g("O1+,O2+,U1+,U2+");
        assert!(matches!(
            apply_move(&d, MoveSpec::R2Delete { first: 1, second: 2 }),
            Err(GaussError::MoveNotApplicable(_))
        ));
    }

    #[test]
    fn realizable_shapes_are_half_of_all() {
        // 8 sign patterns x 8 orders; a triangle pins the orders given the signs
        // up to the global reversal.
        assert_eq!(realizable_shapes().len(), 16);
    }

    #[test]
    fn r3_on_planted_triangle() {
        let (signs, orders) = *realizable_shapes().iter().min().unwrap();
        let d = planted(signs, orders);
        let cands = r3_candidates(&d);
        assert_eq!(cands, vec![[1, 2, 3]]);
        let moved = apply_move(&d, MoveSpec::R3 { chords: [1, 2, 3] }).unwrap();
        assert_ne!(moved, d);
        for c in 1..=3 {
            assert_eq!(index(&moved, c), index(&d, c));
        }
        assert_eq!(writhe_index_polynomial(&moved), writhe_index_polynomial(&d));
        let back = apply_move(&moved, MoveSpec::R3 { chords: [3, 1, 2] }).unwrap();
        assert_eq!(back, d);
    }

    /// Lay out strands top, middle, bottom one after another with the given
    /// pair orders; x = 1, y = 2, z = 3.
    fn planted(signs: [i8; 3], orders: [bool; 3]) -> GaussDiagram {
        let pair = |first: Token, second: Token, keep: bool| if keep { [first, second] } else { [second, first] };
        let [sx, sy, sz] = signs;
        let mut tokens = Vec::new();
        tokens.extend(pair(Token::over(1, sx), Token::over(2, sy), orders[0]));
        tokens.extend(pair(Token::under(1, sx), Token::over(3, sz), orders[1]));
        tokens.extend(pair(Token::under(2, sy), Token::under(3, sz), orders[2]));
        GaussDiagram::from_tokens(tokens).unwrap()
    }

    #[test]
    fn legal_triangles_are_exactly_the_index_preserving_swaps() {
        for bits in 0..64u32 {
            let signs = [0, 1, 2].map(|i| if bits >> i & 1 == 1 { 1i8 } else { -1 });
            let orders = [3, 4, 5].map(|i| bits >> i & 1 == 1);
            let d = planted(signs, orders);
            let mut swapped = d.tokens().to_vec();
            for k in 0..3 {
                swapped.swap(2 * k, 2 * k + 1);
            }
            let swapped = GaussDiagram::from_tokens(swapped).unwrap();
            let preserved = (1..=3).all(|c| index(&swapped, c) == index(&d, c));
            assert_eq!(realizable_shapes().contains(&(signs, orders)), preserved, "{d}");
        }
    }

    #[test]
    fn r3_rejects_non_triangles() {
        let c = g("O1+,U2+,O3+,U1+,O2+,U3+");
        assert!(matches!(
            apply_move(&c, MoveSpec::R3 { chords: [1, 2, 3] }),
            Err(GaussError::MoveNotApplicable(_))
        ));
        assert!(matches!(
            apply_move(&c, MoveSpec::R3 { chords: [1, 1, 3] }),
            Err(GaussError::MoveNotApplicable(_))
        ));
    }
}
