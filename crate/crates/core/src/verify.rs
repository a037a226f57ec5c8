//! The invariant suite run by `asmposet verify`.
//!
//! Each check carries the largest `n` it is run at; a run with `n_max` covers
//! `1..=min(n_max, cap)`. The alternating-sequence predicate is injectable so
//! the suite itself can be mutation tested.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;

use crate::asm::{enumerate_asms_backtrack, enumerate_asms_exhaustive, revalidate, Asm};
use crate::chain::{asm_to_chain, chain_to_asm, collect_maximal_chains, enumerate_maximal_chains};
use crate::exec::Parallelism;
use crate::poset::{count_maximal_chains, down_covers, hasse_edges, is_cover, leq, up_covers};
use crate::seq::{
    differences, enumerate_alternating, is_alternating_slice, is_constrained, partial_sums,
    ConstrainedSequence, Vertex,
};
use crate::symmetry::{
    apply_rho, apply_theta, apply_theta_inverse, apply_xi, find_broken_edge, theta_cycles,
    DihedralElement, VertexPermutation,
};

/// Largest `n_max` accepted by [`Verifier::run`].
pub const MAX_VERIFY_N: usize = 12;

pub type AlternatingPredicate = fn(&[i8]) -> bool;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass(String),
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Largest `n` actually exercised.
    pub up_to: usize,
    pub outcome: Outcome,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, Outcome::Pass(_))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, detail) = match &self.outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => ("FAIL", d),
        };
        write!(f, "{tag}  {:<28} n<={:<3} {detail}", self.name, self.up_to)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.results.iter().find(|r| !r.passed())
    }
}

type CheckFn = fn(&Verifier, usize) -> Result<String, String>;

struct Check {
    name: &'static str,
    cap: usize,
    run: CheckFn,
}

const CHECKS: &[Check] = &[
    Check {
        name: "alt.prefix_vs_pattern",
        cap: 8,
        run: alt_prefix_vs_pattern,
    },
    Check {
        name: "alt.count_law",
        cap: 8,
        run: alt_count_law,
    },
    Check {
        name: "alt.enumeration_order",
        cap: 8,
        run: alt_enumeration_order,
    },
    Check {
        name: "seq.round_trip",
        cap: 8,
        run: seq_round_trip,
    },
    Check {
        name: "asm.oracles_agree",
        cap: 3,
        run: asm_oracles_agree,
    },
    Check {
        name: "asm.transpose",
        cap: 4,
        run: asm_transpose,
    },
    Check {
        name: "poset.count_vs_oracle",
        cap: 4,
        run: count_vs_oracle,
    },
    Check {
        name: "poset.cover_definition",
        cap: 6,
        run: cover_definition,
    },
    Check {
        name: "poset.cover_generation",
        cap: 8,
        run: cover_generation,
    },
    Check {
        name: "poset.graded",
        cap: 10,
        run: graded,
    },
    Check {
        name: "poset.covers_genuine",
        cap: 6,
        run: covers_genuine,
    },
    Check {
        name: "poset.cube_containment",
        cap: 10,
        run: cube_containment,
    },
    Check {
        name: "poset.complement_duality",
        cap: 8,
        run: complement_duality,
    },
    Check {
        name: "poset.bijection_round_trip",
        cap: 5,
        run: bijection_round_trip,
    },
    Check {
        name: "poset.column_trajectories",
        cap: 5,
        run: column_trajectories,
    },
    Check {
        name: "poset.count_vs_enumeration",
        cap: 6,
        run: count_vs_enumeration,
    },
    Check {
        name: "sym.theta_order",
        cap: 12,
        run: theta_order,
    },
    Check {
        name: "sym.xi_after_rho",
        cap: 12,
        run: xi_after_rho,
    },
    Check {
        name: "sym.theta_inverse",
        cap: 12,
        run: theta_inverse,
    },
    Check {
        name: "sym.dihedral_relation",
        cap: 12,
        run: dihedral_relation,
    },
    Check {
        name: "sym.automorphisms",
        cap: 10,
        run: automorphisms,
    },
    Check {
        name: "sym.compose_is_action",
        cap: 6,
        run: compose_is_action,
    },
    Check {
        name: "sym.orbit_sizes_divide",
        cap: 12,
        run: orbit_sizes_divide,
    },
];

#[derive(Debug, Clone, Copy)]
pub struct Verifier {
    pub is_alternating: AlternatingPredicate,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            is_alternating: is_alternating_slice,
        }
    }
}

impl Verifier {
    pub fn with_predicate(is_alternating: AlternatingPredicate) -> Self {
        Verifier { is_alternating }
    }

    pub fn check_names() -> Vec<&'static str> {
        CHECKS.iter().map(|c| c.name).collect()
    }

    /// Runs every check for `n` in `1..=min(n_max, cap)`, stopping each check
    /// at its first counterexample.
    pub fn run(&self, n_max: usize) -> Report {
        let n_max = n_max.clamp(1, MAX_VERIFY_N);
        let results = CHECKS
            .iter()
            .map(|check| {
                let up_to = n_max.min(check.cap);
                let mut details = Vec::new();
                let mut failure = None;
                for n in 1..=up_to {
                    match (check.run)(self, n) {
                        Ok(d) => details.push(d),
                        Err(e) => {
                            failure = Some(format!("n={n}: {e}"));
                            break;
                        }
                    }
                }
                let outcome = match failure {
                    Some(f) => Outcome::Fail(f),
                    None => Outcome::Pass(details.pop().unwrap_or_default()),
                };
                CheckResult {
                    name: check.name,
                    up_to,
                    outcome,
                }
            })
            .collect();
        Report { results }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sign_words(n: usize) -> impl Iterator<Item = Vec<i8>> {
    (0..3usize.pow(n as u32)).map(move |mut code| {
        let mut w = vec![0i8; n];
        for slot in w.iter_mut().rev() {
            *slot = (code % 3) as i8 - 1;
            code /= 3;
        }
        w
    })
}

fn pattern_holds(w: &[i8]) -> bool {
    let nz: Vec<i8> = w.iter().copied().filter(|&e| e != 0).collect();
    nz.len() % 2 == 1
        && nz
            .iter()
            .enumerate()
            .all(|(i, &e)| e == if i % 2 == 0 { 1 } else { -1 })
}

fn vertices(n: usize) -> impl Iterator<Item = Vertex> {
    (0..1u64 << n).map(move |b| Vertex::new(n, b).expect("in range"))
}

fn show(w: &[i8]) -> String {
    format!("{w:?}")
}

fn alt_prefix_vs_pattern(v: &Verifier, n: usize) -> Result<String, String> {
    let mut count = 0;
    for w in sign_words(n) {
        ensure((v.is_alternating)(&w) == pattern_holds(&w), || {
            format!(
                "is_alternating{} disagrees with the nonzero pattern",
                show(&w)
            )
        })?;
        count += 1;
    }
    Ok(format!("{count} words"))
}

fn alt_count_law(v: &Verifier, n: usize) -> Result<String, String> {
    let listed = enumerate_alternating(n).map_err(|e| e.to_string())?.len();
    let brute = sign_words(n).filter(|w| (v.is_alternating)(w)).count();
    let expected = 1usize << (n - 1);
    ensure(listed == expected && brute == expected, || {
        format!("|Alt_{n}|: enumerated {listed}, brute force {brute}, expected {expected}")
    })?;
    Ok(format!("|Alt({n})|={expected}"))
}

fn alt_enumeration_order(v: &Verifier, n: usize) -> Result<String, String> {
    let listed = enumerate_alternating(n).map_err(|e| e.to_string())?;
    for a in &listed {
        ensure((v.is_alternating)(a.entries()), || {
            format!("enumerated {} rejected", show(a.entries()))
        })?;
    }
    for pair in listed.windows(2) {
        ensure(pair[0] < pair[1], || {
            format!("{} !< {}", show(pair[0].entries()), show(pair[1].entries()))
        })?;
    }
    Ok("sorted, all valid".into())
}

fn seq_round_trip(_: &Verifier, n: usize) -> Result<String, String> {
    for bits in 0u32..1 << (n + 1) {
        let sigma: Vec<i64> = (0..=n).rev().map(|i| ((bits >> i) & 1) as i64).collect();
        if let Ok(c) = ConstrainedSequence::new(&sigma) {
            ensure(partial_sums(&differences(&c)) == c, || format!("{sigma:?}"))?;
        }
    }
    for a in enumerate_alternating(n).map_err(|e| e.to_string())? {
        ensure(differences(&partial_sums(&a)) == a, || show(a.entries()))?;
    }
    Ok("both directions".into())
}

fn sorted(mut v: Vec<Asm>) -> Vec<Asm> {
    v.sort();
    v
}

fn asm_oracles_agree(_: &Verifier, n: usize) -> Result<String, String> {
    let ex = enumerate_asms_exhaustive(n).map_err(|e| e.to_string())?;
    let bt = sorted(
        enumerate_asms_backtrack(n)
            .map_err(|e| e.to_string())?
            .collect(),
    );
    ensure(ex == bt, || {
        format!("exhaustive {} vs backtracking {}", ex.len(), bt.len())
    })?;
    Ok(format!("{} matrices", ex.len()))
}

fn asm_transpose(_: &Verifier, n: usize) -> Result<String, String> {
    for a in enumerate_asms_backtrack(n).map_err(|e| e.to_string())? {
        revalidate(&a).map_err(|e| format!("{e}\n{a}"))?;
        revalidate(&a.transpose()).map_err(|e| format!("transpose: {e}\n{a}"))?;
    }
    Ok("transposes valid".into())
}

fn count_vs_oracle(_: &Verifier, n: usize) -> Result<String, String> {
    let count = count_maximal_chains(n).map_err(|e| e.to_string())?;
    let oracle = if n <= 3 {
        enumerate_asms_exhaustive(n)
            .map_err(|e| e.to_string())?
            .len()
    } else {
        enumerate_asms_backtrack(n)
            .map_err(|e| e.to_string())?
            .count()
    };
    ensure(count == BigUint::from(oracle), || {
        format!("count({n})={count} but oracle finds {oracle}")
    })?;
    Ok(format!("count({n})={count} == oracle"))
}

fn cover_definition(v: &Verifier, n: usize) -> Result<String, String> {
    for x in vertices(n) {
        for y in vertices(n) {
            let declared = is_cover(&x, &y).map_err(|e| e.to_string())?;
            let defined = (v.is_alternating)(&y.difference(&x));
            ensure(declared == defined, || {
                format!("is_cover({x},{y})={declared}, difference test says {defined}")
            })?;
        }
    }
    Ok("all pairs".into())
}

fn cover_generation(_: &Verifier, n: usize) -> Result<String, String> {
    let all: Vec<Vertex> = vertices(n).collect();
    for x in &all {
        let up: Vec<Vertex> = all
            .iter()
            .copied()
            .filter(|y| is_cover(x, y) == Ok(true))
            .collect();
        let down: Vec<Vertex> = all
            .iter()
            .copied()
            .filter(|w| is_cover(w, x) == Ok(true))
            .collect();
        ensure(up_covers(x) == up, || format!("up covers of {x}"))?;
        ensure(down_covers(x) == down, || format!("down covers of {x}"))?;
    }
    Ok("generated == filtered".into())
}

fn graded(_: &Verifier, n: usize) -> Result<String, String> {
    let mut edges = 0usize;
    for e in hasse_edges(n).map_err(|e| e.to_string())? {
        ensure(e.upper.rank() == e.lower.rank() + 1, || {
            format!("edge {} {} skips a rank", e.lower, e.upper)
        })?;
        edges += 1;
    }
    Ok(format!("{edges} edges"))
}

fn covers_genuine(_: &Verifier, n: usize) -> Result<String, String> {
    let all: Vec<Vertex> = vertices(n).collect();
    for e in hasse_edges(n).map_err(|e| e.to_string())? {
        for z in &all {
            if *z == e.lower || *z == e.upper {
                continue;
            }
            let between = leq(&e.lower, z).map_err(|e| e.to_string())?
                && leq(z, &e.upper).map_err(|e| e.to_string())?;
            ensure(!between, || {
                format!("{z} lies strictly between {} and {}", e.lower, e.upper)
            })?;
        }
    }
    Ok("no element strictly between".into())
}

fn cube_containment(_: &Verifier, n: usize) -> Result<String, String> {
    let edges: HashSet<(u64, u64)> = hasse_edges(n)
        .map_err(|e| e.to_string())?
        .map(|e| (e.lower.bits(), e.upper.bits()))
        .collect();
    let mut cube = 0usize;
    for x in 0..1u64 << n {
        for b in 0..n {
            if x & (1 << b) == 0 {
                ensure(edges.contains(&(x, x | (1 << b))), || {
                    format!("cube edge {:0n$b} {:0n$b} missing", x, x | (1 << b))
                })?;
                cube += 1;
            }
        }
    }
    ensure(cube == n << (n - 1), || format!("{cube} cube edges"))?;
    Ok(format!("{cube} cube edges present"))
}

fn complement_duality(_: &Verifier, n: usize) -> Result<String, String> {
    for x in vertices(n) {
        for y in vertices(n) {
            let a = is_cover(&x, &y).map_err(|e| e.to_string())?;
            let b = is_cover(&y.complement(), &x.complement()).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{x} {y}"))?;
        }
    }
    Ok("all pairs".into())
}

fn bijection_round_trip(_: &Verifier, n: usize) -> Result<String, String> {
    let mut chains = 0;
    for c in enumerate_maximal_chains(n).map_err(|e| e.to_string())? {
        let a = chain_to_asm(&c);
        revalidate(&a).map_err(|e| format!("chain {c}: {e}"))?;
        ensure(asm_to_chain(&a) == c, || {
            format!("chain {c} does not round trip")
        })?;
        chains += 1;
    }
    let mut asms = 0;
    for a in enumerate_asms_backtrack(n).map_err(|e| e.to_string())? {
        ensure(chain_to_asm(&asm_to_chain(&a)) == a, || {
            format!("matrix\n{a}")
        })?;
        asms += 1;
    }
    ensure(chains == asms, || {
        format!("{chains} chains vs {asms} matrices")
    })?;
    Ok(format!("{chains} chains"))
}

fn column_trajectories(_: &Verifier, n: usize) -> Result<String, String> {
    for c in enumerate_maximal_chains(n).map_err(|e| e.to_string())? {
        for j in 1..=n {
            let column: Vec<i64> = c.vertices().iter().map(|x| x.coord(j) as i64).collect();
            ensure(is_constrained(&column), || format!("chain {c}, column {j}"))?;
        }
    }
    Ok("every column constrained".into())
}

fn count_vs_enumeration(_: &Verifier, n: usize) -> Result<String, String> {
    let count = count_maximal_chains(n).map_err(|e| e.to_string())?;
    let seq = collect_maximal_chains(n, Parallelism::Sequential).map_err(|e| e.to_string())?;
    let par = collect_maximal_chains(n, Parallelism::Parallel).map_err(|e| e.to_string())?;
    ensure(count == BigUint::from(seq.len()), || {
        format!("count {count} vs {} enumerated", seq.len())
    })?;
    ensure(seq == par, || "parallel enumeration order differs".into())?;
    Ok(format!("{count} chains"))
}

fn theta_order(_: &Verifier, n: usize) -> Result<String, String> {
    let theta = VertexPermutation::theta(n);
    let id = VertexPermutation::identity(n);
    ensure(theta.pow(2 * n) == id, || "theta^(2n) != id".into())?;
    ensure(theta.pow(n) == VertexPermutation::complement(n), || {
        "theta^n != complement".into()
    })?;
    Ok("theta^(2n)=id, theta^n=complement".into())
}

fn xi_after_rho(_: &Verifier, n: usize) -> Result<String, String> {
    for x in vertices(n) {
        ensure(apply_xi(&apply_rho(&x)) == apply_theta(&x), || {
            x.to_string()
        })?;
    }
    Ok("pointwise".into())
}

fn theta_inverse(_: &Verifier, n: usize) -> Result<String, String> {
    for x in vertices(n) {
        ensure(apply_theta_inverse(&apply_theta(&x)) == x, || x.to_string())?;
        ensure(apply_theta(&apply_theta_inverse(&x)) == x, || x.to_string())?;
    }
    Ok("pointwise".into())
}

fn dihedral_relation(_: &Verifier, n: usize) -> Result<String, String> {
    let theta = VertexPermutation::theta(n);
    let tau = VertexPermutation::tau(n);
    let lhs = theta.compose(&tau).map_err(|e| e.to_string())?;
    let rhs = tau
        .compose(&VertexPermutation::theta_inverse(n))
        .map_err(|e| e.to_string())?;
    ensure(lhs == rhs, || "theta.tau != tau.theta^-1".into())?;
    ensure(tau.pow(2) == VertexPermutation::identity(n), || {
        "tau^2 != id".into()
    })?;
    Ok("theta.tau = tau.theta^-1".into())
}

fn automorphisms(_: &Verifier, n: usize) -> Result<String, String> {
    for (name, f) in [
        ("theta", VertexPermutation::theta(n)),
        ("tau", VertexPermutation::tau(n)),
    ] {
        if let Some(e) = find_broken_edge(&f, Parallelism::default()).map_err(|e| e.to_string())? {
            return Err(format!("{name} breaks edge {} {}", e.lower, e.upper));
        }
    }
    Ok("theta, tau".into())
}

fn compose_is_action(_: &Verifier, n: usize) -> Result<String, String> {
    let all = DihedralElement::all(n);
    for g in &all {
        for h in &all {
            let gh = g.compose(h).map_err(|e| e.to_string())?;
            for x in vertices(n) {
                let direct = g
                    .apply(&h.apply(&x).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                ensure(gh.apply(&x) == Ok(direct), || format!("({g})({h}) at {x}"))?;
            }
            for k in &all {
                let left = gh.compose(k).map_err(|e| e.to_string())?;
                let right = g
                    .compose(&h.compose(k).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                ensure(left == right, || format!("associativity at {g}, {h}, {k}"))?;
            }
        }
    }
    Ok(format!("{} elements", all.len()))
}

fn orbit_sizes_divide(_: &Verifier, n: usize) -> Result<String, String> {
    let cycles = theta_cycles(n).map_err(|e| e.to_string())?;
    for c in &cycles {
        ensure((2 * n).is_multiple_of(c.len()), || {
            format!("cycle through {} has length {}", c[0], c.len())
        })?;
    }
    Ok(format!("{} theta-orbits", cycles.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accepts_all_zero(w: &[i8]) -> bool {
        is_alternating_slice(w) || w.iter().all(|&e| e == 0)
    }

    fn ignores_last_entry(w: &[i8]) -> bool {
        w.len() > 1 && is_alternating_slice(&w[..w.len() - 1])
    }

    #[test]
    fn suite_passes() {
        let report = Verifier::default().run(4);
        for r in &report.results {
            assert!(r.passed(), "{r}");
        }
        let count = report
            .results
            .iter()
            .find(|r| r.name == "poset.count_vs_oracle")
            .unwrap();
        assert_eq!(count.outcome, Outcome::Pass("count(4)=42 == oracle".into()));
        assert!(Verifier::default().run(1).all_passed());
    }

    #[test]
    fn suite_detects_faulty_predicates() {
        for faulty in [accepts_all_zero as AlternatingPredicate, ignores_last_entry] {
            let report = Verifier::with_predicate(faulty).run(1);
            let fail = report.first_failure().expect("mutation must be caught");
            assert!(matches!(&fail.outcome, Outcome::Fail(msg) if msg.starts_with("n=1")));
        }
    }

    #[test]
    fn caps_are_respected() {
        let report = Verifier::default().run(2);
        assert!(report.results.iter().all(|r| r.up_to <= 2));
        assert_eq!(report.results.len(), Verifier::check_names().len());
    }
}
