//! The graded poset on binary words of length `n`.
//!
//! `y` covers `x` exactly when the coordinatewise difference `y - x` is an
//! alternating sequence. Every cover raises the rank by one, the all-zeros
//! word is the unique minimum and the all-ones word the unique maximum. The
//! Hasse diagram contains the `n`-cube (a single `+1` is alternating) plus
//! the extra edges whose difference has three or more nonzero entries.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exec::{self, Parallelism};
use crate::seq::{mask, Vertex};

/// Largest `n` for edge streaming and chain counting.
pub const MAX_POSET_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("vertex lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("order {n} outside supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
}

pub(crate) fn check_order(n: usize, max: usize) -> Result<(), PosetError> {
    if n == 0 || n > max {
        Err(PosetError::OrderOutOfRange { n, max })
    } else {
        Ok(())
    }
}

fn same_len(x: &Vertex, y: &Vertex) -> Result<(), PosetError> {
    if x.len() != y.len() {
        Err(PosetError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        })
    } else {
        Ok(())
    }
}

#[inline]
fn highest_bit(word: u64) -> u32 {
    63 - word.leading_zeros()
}

/// Bitmask form of the cover test: the positions where `y` gains a one must
/// interleave with those where it loses one, starting and ending with a gain.
#[inline]
pub(crate) fn covers_bits(lower: u64, upper: u64) -> bool {
    let gain = upper & !lower;
    let loss = lower & !upper;
    let mut rest = gain | loss;
    if rest == 0 {
        return false;
    }
    let mut expect_gain = true;
    while rest != 0 {
        let b = highest_bit(rest);
        if (gain >> b) & 1 == 1 {
            if !expect_gain {
                return false;
            }
        } else if expect_gain {
            return false;
        }
        expect_gain = !expect_gain;
        rest &= !(1u64 << b);
    }
    !expect_gain
}

/// Calls `visit` with the support of every alternating sequence whose `+1`
/// entries lie in `plus` and whose `-1` entries lie in `minus`, restricted to
/// the low `width` bits.
fn for_each_alternating_support(width: usize, plus: u64, minus: u64, visit: &mut impl FnMut(u64)) {
    fn walk(
        below: u64,
        want_plus: bool,
        support: u64,
        plus: u64,
        minus: u64,
        visit: &mut impl FnMut(u64),
    ) {
        let mut rest = if want_plus { plus } else { minus } & below;
        while rest != 0 {
            let b = highest_bit(rest);
            rest &= !(1u64 << b);
            let s = support | (1u64 << b);
            if want_plus {
                visit(s);
            }
            walk((1u64 << b) - 1, !want_plus, s, plus, minus, visit);
        }
    }
    walk(mask(width), true, 0, plus, minus, visit);
}

pub(crate) fn for_each_up_cover(x: u64, n: usize, mut visit: impl FnMut(u64)) {
    for_each_alternating_support(n, !x & mask(n), x, &mut |s| visit(x ^ s));
}

pub(crate) fn for_each_down_cover(y: u64, n: usize, mut visit: impl FnMut(u64)) {
    for_each_alternating_support(n, y, !y & mask(n), &mut |s| visit(y ^ s));
}

/// Whether `y` covers `x`.
pub fn is_cover(x: &Vertex, y: &Vertex) -> Result<bool, PosetError> {
    same_len(x, y)?;
    Ok(covers_bits(x.bits(), y.bits()))
}

/// Every vertex covering `x`, in lexicographic order.
pub fn up_covers(x: &Vertex) -> Vec<Vertex> {
    let n = x.len();
    let mut out = Vec::new();
    for_each_up_cover(x.bits(), n, |y| out.push(Vertex::from_raw(n, y)));
    out.sort_unstable();
    out
}

/// Every vertex covered by `y`, in lexicographic order.
pub fn down_covers(y: &Vertex) -> Vec<Vertex> {
    let n = y.len();
    let mut out = Vec::new();
    for_each_down_cover(y.bits(), n, |x| out.push(Vertex::from_raw(n, x)));
    out.sort_unstable();
    out
}

/// A cover pair; `upper` covers `lower`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HasseEdge {
    pub lower: Vertex,
    pub upper: Vertex,
}

impl HasseEdge {
    /// Whether the edge joins words at Hamming distance one.
    pub fn is_cube_edge(&self) -> bool {
        (self.lower.bits() ^ self.upper.bits()).count_ones() == 1
    }
}

/// Every cover pair exactly once, ordered by lower vertex then upper vertex.
pub fn hasse_edges(n: usize) -> Result<HasseEdges, PosetError> {
    check_order(n, MAX_POSET_ORDER)?;
    Ok(HasseEdges {
        n,
        next_lower: 0,
        lower: Vertex::zero(n),
        uppers: Vec::new().into_iter(),
    })
}

/// Streaming iterator returned by [`hasse_edges`].
#[derive(Debug, Clone)]
pub struct HasseEdges {
    n: usize,
    next_lower: u64,
    lower: Vertex,
    uppers: std::vec::IntoIter<Vertex>,
}

impl Iterator for HasseEdges {
    type Item = HasseEdge;

    fn next(&mut self) -> Option<HasseEdge> {
        loop {
            if let Some(upper) = self.uppers.next() {
                return Some(HasseEdge {
                    lower: self.lower,
                    upper,
                });
            }
            if self.next_lower > mask(self.n) {
                return None;
            }
            self.lower = Vertex::from_raw(self.n, self.next_lower);
            self.uppers = up_covers(&self.lower).into_iter();
            self.next_lower += 1;
        }
    }
}

/// Number of Hasse edges, counted by walking every vertex's up covers.
pub fn hasse_edge_count(n: usize, par: Parallelism) -> Result<u64, PosetError> {
    check_order(n, MAX_POSET_ORDER)?;
    let lowers: Vec<u64> = (0..=mask(n)).collect();
    let per = exec::map_collect(&lowers, par, |&x| {
        let mut c = 0u64;
        for_each_up_cover(x, n, |_| c += 1);
        c
    });
    Ok(per.into_iter().sum())
}

/// `x <= y`: `y` is reachable from `x` by zero or more cover steps.
///
/// Searches upward one rank layer at a time.
pub fn leq(x: &Vertex, y: &Vertex) -> Result<bool, PosetError> {
    same_len(x, y)?;
    if x == y {
        return Ok(true);
    }
    let (rx, ry) = (x.rank(), y.rank());
    if rx >= ry {
        return Ok(false);
    }
    let n = x.len();
    let target = y.bits();
    let mut frontier: HashSet<u64> = HashSet::from([x.bits()]);
    for _ in rx..ry - 1 {
        let mut next = HashSet::new();
        for &z in &frontier {
            for_each_up_cover(z, n, |w| {
                next.insert(w);
            });
        }
        frontier = next;
    }
    Ok(frontier.iter().any(|&z| covers_bits(z, target)))
}

/// Vertices grouped by rank, each group in increasing order.
pub(crate) fn rank_layers(n: usize) -> Vec<Vec<u64>> {
    let mut layers = vec![Vec::new(); n + 1];
    for v in 0..=mask(n) {
        layers[v.count_ones() as usize].push(v);
    }
    layers
}

/// Number of maximal chains, by dynamic programming over rank layers.
pub fn count_maximal_chains(n: usize) -> Result<BigUint, PosetError> {
    count_maximal_chains_with(n, Parallelism::default())
}

/// [`count_maximal_chains`] with an explicit execution strategy.
///
/// `paths[v]` is the number of cover paths from the minimum to `v`; it is the
/// sum over the vertices `v` covers. Each layer only reads the one below it,
/// so a layer's vertices are independent.
pub fn count_maximal_chains_with(n: usize, par: Parallelism) -> Result<BigUint, PosetError> {
    check_order(n, MAX_POSET_ORDER)?;
    let layers = rank_layers(n);
    let mut paths: Vec<BigUint> = vec![BigUint::zero(); 1usize << n];
    paths[0] = BigUint::one();
    for layer in &layers[1..] {
        let values = exec::map_collect(layer, par, |&v| {
            let mut acc = BigUint::zero();
            for_each_down_cover(v, n, |x| acc += &paths[x as usize]);
            acc
        });
        for (&v, value) in layer.iter().zip(values) {
            paths[v as usize] = value;
        }
    }
    Ok(std::mem::take(&mut paths[mask(n) as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::is_alternating_slice;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn names(vs: &[Vertex]) -> Vec<String> {
        vs.iter().map(|x| x.to_string()).collect()
    }

    fn all_vertices(n: usize) -> Vec<Vertex> {
        (0..=mask(n)).map(|b| Vertex::from_raw(n, b)).collect()
    }

    /// Cover test straight from the definition, on coordinate tuples.
    fn cover_oracle(x: &Vertex, y: &Vertex) -> bool {
        let diff: Vec<i8> = x
            .coords()
            .iter()
            .zip(y.coords())
            .map(|(&a, b)| b as i8 - a as i8)
            .collect();
        is_alternating_slice(&diff)
    }

    #[test]
    fn cover_examples() {
        assert!(is_cover(&v("010"), &v("101")).unwrap());
        assert!(!is_cover(&v("00"), &v("11")).unwrap());
        assert!(is_cover(&v("000"), &v("010")).unwrap());
        assert!(!is_cover(&v("010"), &v("010")).unwrap());
        assert_eq!(
            is_cover(&v("01"), &v("010")),
            Err(PosetError::LengthMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn bitmask_cover_matches_definition() {
        for n in 1..=7 {
            for x in all_vertices(n) {
                for y in all_vertices(n) {
                    assert_eq!(is_cover(&x, &y).unwrap(), cover_oracle(&x, &y), "{x} {y}");
                    assert_eq!(
                        is_cover(&x, &y).unwrap(),
                        is_alternating_slice(&y.difference(&x))
                    );
                }
            }
        }
    }

    #[test]
    fn up_and_down_cover_examples() {
        assert_eq!(names(&up_covers(&v("000"))), ["001", "010", "100"]);
        assert_eq!(names(&up_covers(&v("010"))), ["011", "101", "110"]);
        assert!(up_covers(&v("1111")).is_empty());
        assert_eq!(names(&down_covers(&v("111"))), ["011", "101", "110"]);
        assert!(down_covers(&v("0000")).is_empty());
        assert_eq!(names(&down_covers(&v("101"))), ["001", "010", "100"]);
    }

    #[test]
    fn generated_covers_match_candidate_filter() {
        for n in 1..=8 {
            let all = all_vertices(n);
            for x in &all {
                let filtered_up: Vec<Vertex> =
                    all.iter().copied().filter(|y| cover_oracle(x, y)).collect();
                let filtered_down: Vec<Vertex> =
                    all.iter().copied().filter(|w| cover_oracle(w, x)).collect();
                assert_eq!(up_covers(x), filtered_up);
                assert_eq!(down_covers(x), filtered_down);
                assert!(up_covers(x).iter().all(|y| y.rank() == x.rank() + 1));
            }
        }
    }

    #[test]
    fn edges_small_orders() {
        let e1: Vec<HasseEdge> = hasse_edges(1).unwrap().collect();
        assert_eq!(e1.len(), 1);
        let e2: Vec<HasseEdge> = hasse_edges(2).unwrap().collect();
        assert_eq!(e2.len(), 4);
        assert!(e2.iter().all(HasseEdge::is_cube_edge));
        let e3: Vec<HasseEdge> = hasse_edges(3).unwrap().collect();
        assert_eq!(e3.len(), 13);
        let extra: Vec<_> = e3.iter().filter(|e| !e.is_cube_edge()).collect();
        assert_eq!(extra.len(), 1);
        assert_eq!((extra[0].lower, extra[0].upper), (v("010"), v("101")));
        assert!(hasse_edges(0).is_err());
        assert!(hasse_edges(21).is_err());
    }

    #[test]
    fn edges_match_all_pairs_scan() {
        for n in 1..=7 {
            let all = all_vertices(n);
            let mut scan = Vec::new();
            for &x in &all {
                for &y in &all {
                    if cover_oracle(&x, &y) {
                        scan.push(HasseEdge { lower: x, upper: y });
                    }
                }
            }
            let streamed: Vec<HasseEdge> = hasse_edges(n).unwrap().collect();
            assert_eq!(streamed, scan, "n={n}");
            for par in [Parallelism::Sequential, Parallelism::Parallel] {
                assert_eq!(hasse_edge_count(n, par).unwrap(), scan.len() as u64);
            }
        }
    }

    #[test]
    fn graded_and_cube_containment() {
        for n in 1..=10 {
            let edges: HashSet<(u64, u64)> = hasse_edges(n)
                .unwrap()
                .inspect(|e| assert_eq!(e.upper.rank(), e.lower.rank() + 1))
                .map(|e| (e.lower.bits(), e.upper.bits()))
                .collect();
            let mut cube = 0;
            for x in 0..=mask(n) {
                for b in 0..n {
                    if x & (1 << b) == 0 {
                        assert!(edges.contains(&(x, x | (1 << b))));
                        cube += 1;
                    }
                }
            }
            assert_eq!(cube, n << (n - 1));
        }
    }

    #[test]
    fn leq_examples() {
        for n in 1..=4 {
            for x in all_vertices(n) {
                assert!(leq(&x, &x).unwrap());
                assert!(leq(&Vertex::zero(n), &x).unwrap());
                assert!(leq(&x, &Vertex::ones(n)).unwrap());
            }
        }
        assert!(!leq(&v("10"), &v("01")).unwrap());
        assert!(!leq(&v("11"), &v("00")).unwrap());
        assert!(leq(&v("001"), &v("111")).unwrap());
        assert!(leq(&v("010"), &v("101")).unwrap());
        assert!(leq(&v("010"), &v("111")).unwrap());
        assert!(leq(&v("10"), &v("100")).is_err());
    }

    #[test]
    fn covers_have_nothing_strictly_between() {
        for n in 1..=6 {
            let all = all_vertices(n);
            for e in hasse_edges(n).unwrap() {
                for z in &all {
                    if *z == e.lower || *z == e.upper {
                        continue;
                    }
                    assert!(!(leq(&e.lower, z).unwrap() && leq(z, &e.upper).unwrap()));
                }
            }
        }
    }

    #[test]
    fn complement_duality() {
        for n in 1..=8 {
            let all = all_vertices(n);
            for x in &all {
                for y in &all {
                    assert_eq!(
                        is_cover(x, y).unwrap(),
                        is_cover(&y.complement(), &x.complement()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn chain_counts() {
        let counts: Vec<u64> = (1..=6)
            .map(|n| count_maximal_chains(n).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(counts, vec![1, 2, 7, 42, 429, 7436]);
        assert!(count_maximal_chains(0).is_err());
        assert!(count_maximal_chains(21).is_err());
    }

    #[test]
    fn counting_strategies_agree() {
        for n in 1..=10 {
            assert_eq!(
                count_maximal_chains_with(n, Parallelism::Sequential).unwrap(),
                count_maximal_chains_with(n, Parallelism::Parallel).unwrap()
            );
        }
    }
}
