//! The randomized identity suites and fixed examples, runnable without a
//! test harness.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::braid::{
    closure_summary, fiber_euler, fiber_stabilize, is_homogeneous, stallings_homogenize, total_intersection, BraidWord,
};
use crate::gauss::{
    alexander_numbering, apply_move, index, index_by_interleaving, index_report, is_almost_classical, parse_gauss,
    writhe_index_polynomial,
};
use crate::milnor::{
    index_chain_check, intersection_chain, longitude_linking, longitudes_from_pure_braid, m123_from_words,
    mellor_melvin, mu123_of_closure, t123_from_homology, MmData, Residue, SurfaceWord,
};
use crate::poly::{eq_up_to_units, specialize, LaurentPoly1, LaurentPoly2, Substitution};
use crate::random::{
    case_rng, random_block_seifert, random_braid, random_gauss_diagram, random_mixed_braid, random_mixed_diagram,
    random_move, random_unimodular, random_vector, SuiteRng,
};
use crate::seifert::{ac_bridge_check, alexander_ac, trefoil_sum_seifert, vpm_from_block, AcSeifertPair};

pub const DEFAULT_SEED: u64 = 0x5eed_1234;

/// Two-variable Alexander polynomial of a boundary link whose first
/// component is the fibered knot 8_21 and whose associated virtual knot has
/// AC polynomial `1 - 2t + 2t^2`.
pub const EXAMPLE_NABLA: &str = "-2 + 8*t1 - 10*t1^2 + 6*t1^3 - t1^4 + 2*t2 - 10*t1*t2 + 15*t1^2*t2 \
    - 10*t1^3*t2 + 2*t1^4*t2 - t2^2 + 6*t1*t2^2 - 10*t1^2*t2^2 + 8*t1^3*t2^2 - 2*t1^4*t2^2";

pub const CLASSICAL_TREFOIL: &str = "O1+,U2+,O3+,U1+,O2+,U3+";
pub const VIRTUAL_TREFOIL: &str = "O1+,O2+,U1+,U2+";

/// Borromean rings as the closure of `(σ1 σ2^-1)^3`.
pub const BORROMEAN: &str = "1 -2 1 -2 1 -2";

/// Surface words of a link in special Seifert form: the first component
/// meets no other surface, the second meets only the third surface and the
/// third meets only the second.
pub const SSF_WORDS: [&str; 3] = ["", "3+ 3- 3+", "2- 2+"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict}  {:<28} {:>5} cases", self.name, self.cases)?;
        if let Some(msg) = &self.first_failure {
            write!(f, "  first failure: {msg}")?;
        }
        Ok(())
    }
}

type CaseResult = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CaseResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cases(name: &'static str, seed: u64, cases: usize, f: impl Fn(&mut SuiteRng) -> CaseResult) -> SuiteOutcome {
    let mut failures = 0;
    let mut first_failure = None;
    for case in 0..cases {
        if let Err(msg) = f(&mut case_rng(seed, case as u64)) {
            failures += 1;
            first_failure.get_or_insert_with(|| format!("case {case}: {msg}"));
        }
    }
    SuiteOutcome {
        name,
        cases,
        failures,
        first_failure,
    }
}

fn single(name: &'static str, result: CaseResult) -> SuiteOutcome {
    let failed = result.is_err();
    SuiteOutcome {
        name,
        cases: 1,
        failures: usize::from(failed),
        first_failure: result.err(),
    }
}

fn example_nabla() -> LaurentPoly2 {
    EXAMPLE_NABLA.parse().expect("fixture parses")
}

fn p1(s: &str) -> LaurentPoly1 {
    s.parse().expect("fixture parses")
}

/// `∇(0, t⁻¹)` scaled by `det(A_J)·t² = −t²` is the AC polynomial `1 − 2t + 2t²`.
pub fn nabla_pipeline() -> SuiteOutcome {
    single(
        "nabla pipeline",
        (|| {
            let s =
                specialize(&example_nabla(), Substitution::Int(0), Substitution::TInv).map_err(|e| e.to_string())?;
            ensure(s == p1("-2 + 2*t^-1 - t^-2"), || format!("specialization gave {s}"))?;
            let scaled = &p1("-t^2") * &s;
            ensure(scaled == p1("1 - 2*t + 2*t^2"), || {
                format!("scaled polynomial is {scaled}")
            })
        })(),
    )
}

/// `∇(t, 1)` is the Alexander polynomial of 8_21 and `∇(1, t)` that of the trefoil.
pub fn nabla_torres() -> SuiteOutcome {
    single(
        "nabla torres",
        (|| {
            let nabla = example_nabla();
            let first = specialize(&nabla, Substitution::T, Substitution::Int(1)).map_err(|e| e.to_string())?;
            ensure(eq_up_to_units(&first, &p1("1 - 4*t + 5*t^2 - 4*t^3 + t^4")), || {
                format!("∇(t,1) = {first}")
            })?;
            let second = specialize(&nabla, Substitution::Int(1), Substitution::T).map_err(|e| e.to_string())?;
            ensure(eq_up_to_units(&second, &p1("1 - t + t^2")), || {
                format!("∇(1,t) = {second}")
            })
        })(),
    )
}

/// `det(tV⁻ − V⁺) = det(A_J)·t^{2g_K}·∇(0, t⁻¹)` on random block data.
pub fn ac_bridge_suite(seed: u64, cases: usize) -> SuiteOutcome {
    run_cases("ac bridge identity", seed, cases, |rng| {
        let bs = random_block_seifert(rng, 2, 3);
        let r = ac_bridge_check(&bs).map_err(|e| e.to_string())?;
        ensure(r.pass, || {
            format!("lhs {} rhs {} for A_J {:?}", r.lhs, r.rhs, bs.a_j().to_rows())
        })
    })
}

/// The AC polynomial is unchanged by a unimodular change of basis.
pub fn ac_congruence_suite(seed: u64, cases: usize) -> SuiteOutcome {
    run_cases("ac congruence invariance", seed, cases, |rng| {
        let bs = random_block_seifert(rng, 2, 3);
        let pair = vpm_from_block(&bs).map_err(|e| e.to_string())?;
        let m = random_unimodular(rng, pair.v_minus().rows(), 2);
        let mt = m.transpose();
        let moved =
            AcSeifertPair::new(&(&mt * pair.v_minus()) * &m, &(&mt * pair.v_plus()) * &m).map_err(|e| e.to_string())?;
        let (a, b) = (
            alexander_ac(&pair).map_err(|e| e.to_string())?,
            alexander_ac(&moved).map_err(|e| e.to_string())?,
        );
        ensure(a == b, || format!("{a} became {b}"))
    })
}

/// The Borromean rings have triple linking number ±1 and no pairwise linking.
pub fn borromean() -> SuiteOutcome {
    single(
        "borromean triple linking",
        (|| {
            let beta = BraidWord::parse(BORROMEAN, 3).map_err(|e| e.to_string())?;
            let s = closure_summary(&beta);
            ensure(s.components == 3, || format!("{} components", s.components))?;
            ensure(s.lk(0, 1) == 0 && s.lk(0, 2) == 0 && s.lk(1, 2) == 0, || {
                "nonzero pairwise linking".into()
            })?;
            let mu = mu123_of_closure(&beta).map_err(|e| e.to_string())?;
            ensure(mu.modulus == 0 && mu.value.abs() == 1, || format!("mu123 = {mu}"))
        })(),
    )
}

/// The derivative-curve chain equals the direct intersection pairing on
/// connected sums of trefoil fibers.
pub fn index_chain_suite(seed: u64, cases: usize) -> SuiteOutcome {
    run_cases("index chain identity", seed, cases, |rng| {
        let g = rng.gen_range(1..=4);
        let (k2, k3) = (random_vector(rng, 2 * g, 5), random_vector(rng, 2 * g, 5));
        let direct = t123_from_homology(&k2, &k3, g).map_err(|e| e.to_string())?;
        let chain = intersection_chain(&trefoil_sum_seifert(g), &k2, &k3).map_err(|e| e.to_string())?;
        ensure(direct == chain, || {
            format!("k2 {k2:?} k3 {k3:?}: direct {direct}, chain {chain}")
        })
    })
}

/// Virtual trefoil crossing of index −1 on a genus-one trefoil fiber: the
/// triple-point count equals the index, the special-form words give
/// `m123 = 0`, and both routes give triple linking number 1.
pub fn triple_point_example() -> SuiteOutcome {
    single(
        "triple point example",
        (|| {
            let d = parse_gauss(VIRTUAL_TREFOIL).map_err(|e| e.to_string())?;
            let x = index_report(&d)
                .entries
                .into_iter()
                .find(|e| e.index == -1)
                .ok_or("virtual trefoil has no crossing of index -1")?;
            let r = index_chain_check(&[0, 1], &[1, 0], 1, 0).map_err(|e| e.to_string())?;
            ensure(r.index == x.index && r.t123 == r.index && r.pass, || {
                format!("chain report {r:?}")
            })?;
            let words = SSF_WORDS.map(|w| SurfaceWord::parse(w).expect("fixture parses"));
            let m123 = m123_from_words(&words).map_err(|e| e.to_string())?;
            ensure(m123 == 0, || format!("m123 = {m123}"))?;
            let mu = mellor_melvin(&MmData {
                words,
                t123: r.t123,
                lk: [0, 0, 0],
            })
            .map_err(|e| e.to_string())?;
            ensure(mu == Residue::new(1, 0) && mu == r.mu123, || {
                format!("mu123 {mu} vs {}", r.mu123)
            })
        })(),
    )
}

/// A diagram admits an Alexander numbering exactly when every index vanishes.
pub fn ac_index_zero_suite(seed: u64, cases: usize) -> SuiteOutcome {
    let mut outcome = run_cases("ac iff index zero", seed, cases, |rng| {
        let d = random_mixed_diagram(rng, 8);
        let numerable = alexander_numbering(&d).is_some();
        let zero = index_report(&d).entries.iter().all(|e| e.index == 0);
        ensure(numerable == zero && is_almost_classical(&d) == zero, || {
            format!("{d}: numbering {numerable}, all indices zero {zero}")
        })
    });
    let fixed = (|| {
        let classical = parse_gauss(CLASSICAL_TREFOIL).map_err(|e| e.to_string())?;
        let virtual_ = parse_gauss(VIRTUAL_TREFOIL).map_err(|e| e.to_string())?;
        ensure(
            is_almost_classical(&classical) && !is_almost_classical(&virtual_),
            || "trefoil codes misclassified".into(),
        )
    })();
    outcome.cases += 1;
    if let Err(msg) = fixed {
        outcome.failures += 1;
        outcome.first_failure.get_or_insert(msg);
    }
    outcome
}

/// Smoothing and interleaving give the same index.
pub fn index_paths_suite(seed: u64, cases: usize) -> SuiteOutcome {
    run_cases("index paths agree", seed, cases, |rng| {
        let chords = rng.gen_range(0..=8);
        let d = random_gauss_diagram(rng, chords);
        for c in d.chords() {
            let (a, b) = (
                index(&d, c).map_err(|e| e.to_string())?,
                index_by_interleaving(&d, c).map_err(|e| e.to_string())?,
            );
            ensure(a == b, || format!("{d} chord {c}: {a} vs {b}"))?;
        }
        Ok(())
    })
}

/// Random walks of extended Reidemeister moves keep the writhe polynomial.
pub fn writhe_move_suite(seed: u64, diagrams: usize, moves: usize) -> SuiteOutcome {
    let mut outcome = run_cases("writhe polynomial moves", seed, diagrams, |rng| {
        let chords = rng.gen_range(1..=6);
        let mut d = random_gauss_diagram(rng, chords);
        let p = writhe_index_polynomial(&d);
        for step in 0..moves {
            let (m, next) = random_move(rng, &d, 10);
            let q = writhe_index_polynomial(&next);
            ensure(q == p, || format!("step {step}: {m:?} on {d} changed {p} to {q}"))?;
            debug_assert_eq!(apply_move(&d, m).as_ref(), Ok(&next));
            d = next;
        }
        Ok(())
    });
    outcome.cases = diagrams * moves;
    outcome
}

/// Homogenization output is homogeneous, restricts to the input and adds a
/// single unknotted component.
pub fn stallings_suite(seed: u64, cases: usize) -> SuiteOutcome {
    run_cases("stallings homogenization", seed, cases, |rng| {
        let strands = rng.gen_range(2..=6);
        let len = rng.gen_range(0..=20);
        let b = random_braid(rng, strands, len);
        let h = stallings_homogenize(&b);
        ensure(is_homogeneous(&h.result), || {
            format!("{b} -> {} is not homogeneous", h.result)
        })?;
        let added: BTreeSet<usize> = (strands..strands + h.added).collect();
        let restored = h.result.delete_strands(&added);
        ensure(restored == b, || format!("{b} -> {} restricts to {restored}", h.result))?;
        if h.added > 0 {
            let s = closure_summary(&h.result);
            let component = s.component_of[strands];
            let strands_of: BTreeSet<usize> = s.strands_of(component).into_iter().collect();
            ensure(strands_of == added, || {
                format!("{b}: added strands close to {strands_of:?}")
            })?;
        }
        Ok(())
    })
}

/// Fiber stabilization cancels the total intersection and is idempotent.
pub fn fiber_stabilize_suite(seed: u64, cases: usize) -> SuiteOutcome {
    run_cases("fiber stabilization", seed, cases, |rng| {
        let (fixed, moving) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let mb = random_mixed_braid(rng, fixed, moving, 12);
        let once = fiber_stabilize(&mb).map_err(|e| format!("{}: {e}", mb.to_json()))?;
        let total = total_intersection(&once).map_err(|e| e.to_string())?;
        ensure(total == 0, || {
            format!("{} has total intersection {total}", once.to_json())
        })?;
        ensure(
            is_homogeneous(
                &once
                    .word
                    .delete_strands(&(fixed + once.added..fixed + once.added + moving).collect()),
            ),
            || format!("{}: fixed and added part is not homogeneous", once.to_json()),
        )?;
        let twice = fiber_stabilize(&once).map_err(|e| e.to_string())?;
        ensure(twice == once, || format!("{} is not a fixed point", once.to_json()))
    })
}

/// Exponent sums of the longitudes match linking numbers counted from crossings.
pub fn longitude_linking_suite(seed: u64, cases: usize) -> SuiteOutcome {
    run_cases("longitude linking", seed, cases, |rng| {
        let strands = rng.gen_range(2..=4);
        let len = rng.gen_range(0..=10);
        let half = random_braid(rng, strands, len);
        // A conjugate of a product of squares is pure.
        let beta = half.then(&random_pure_core(rng, strands)).then(&half.inverse());
        let l = longitudes_from_pure_braid(&beta).map_err(|e| e.to_string())?;
        let s = closure_summary(&beta);
        for i in 1..=strands {
            for j in (1..=strands).filter(|&j| j != i) {
                let (by_words, by_crossings) = (
                    longitude_linking(&l, i, j),
                    s.lk(s.component_of[i - 1], s.component_of[j - 1]),
                );
                ensure(by_words == by_crossings, || {
                    format!("{beta}: lk({i},{j}) longitude {by_words} crossings {by_crossings}")
                })?;
            }
        }
        Ok(())
    })
}

fn random_pure_core(rng: &mut SuiteRng, strands: usize) -> BraidWord {
    let squares = random_braid(rng, strands, 4);
    let letters = squares.letters().iter().flat_map(|&l| [l, l]).collect();
    BraidWord::new(strands, letters).expect("indices in range")
}

/// Fiber surface counts for the trefoil and the figure-eight braids.
pub fn fiber_euler_examples() -> SuiteOutcome {
    single(
        "fiber euler examples",
        (|| {
            let trefoil =
                fiber_euler(&BraidWord::parse("1 1 1", 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(trefoil.genus == 1 && trefoil.chi == -1, || {
                format!("trefoil {trefoil:?}")
            })?;
            let eight = fiber_euler(&BraidWord::parse("-2 1 -2 1", 3).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure(eight.chi == -1 && eight.genus == 1, || {
                format!("figure eight {eight:?}")
            })
        })(),
    )
}

/// Every suite, in a fixed order.
pub fn run_all(seed: u64) -> Vec<SuiteOutcome> {
    vec![
        nabla_pipeline(),
        nabla_torres(),
        ac_bridge_suite(seed, 200),
        ac_congruence_suite(seed, 100),
        borromean(),
        index_chain_suite(seed, 500),
        triple_point_example(),
        ac_index_zero_suite(seed, 1000),
        index_paths_suite(seed, 300),
        writhe_move_suite(seed, 20, 500),
        stallings_suite(seed, 200),
        fiber_stabilize_suite(seed, 200),
        longitude_linking_suite(seed, 200),
        fiber_euler_examples(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_examples_pass() {
        for outcome in [
            nabla_pipeline(),
            nabla_torres(),
            borromean(),
            triple_point_example(),
            fiber_euler_examples(),
        ] {
            assert!(outcome.passed(), "{outcome}");
        }
    }

    #[test]
    fn small_random_runs_pass() {
        for outcome in [
            ac_bridge_suite(1, 20),
            ac_congruence_suite(1, 20),
            index_chain_suite(1, 50),
            ac_index_zero_suite(1, 100),
            index_paths_suite(1, 50),
            writhe_move_suite(1, 3, 50),
            stallings_suite(1, 50),
            fiber_stabilize_suite(1, 50),
            longitude_linking_suite(1, 50),
        ] {
            assert!(outcome.passed(), "{outcome}");
        }
    }

    #[test]
    fn failures_are_reported() {
        let out = run_cases("always fails", 0, 3, |_| Err("nope".into()));
        assert_eq!(out.failures, 3);
        assert_eq!(out.first_failure.as_deref(), Some("case 0: nope"));
        assert!(out.to_string().starts_with("FAIL"));
    }
}
