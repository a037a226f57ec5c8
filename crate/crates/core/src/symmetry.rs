//! Dihedral symmetries of the Hasse diagram.
//!
//! * `rho`: cyclic shift `(a_1, ..., a_n) -> (a_n, a_1, ..., a_{n-1})`.
//! * `xi`: complement of the first coordinate.
//! * `theta = xi . rho`: `(a_1, ..., a_n) -> (1 - a_n, a_1, ..., a_{n-1})`, of
//!   order `2n`, with `theta^n` the full complement.
//! * `tau`: reversal of the coordinates.
//!
//! `theta` and `tau` are graph automorphisms of the Hasse diagram (not order
//! automorphisms: `theta` moves the minimum) and satisfy
//! `theta . tau = tau . theta^-1`, so they generate a dihedral action.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::exec::{self, Parallelism};
use crate::poset::{check_order, covers_bits, for_each_up_cover, HasseEdge, PosetError};
use crate::seq::{mask, Vertex};

/// Bound on `n` for operations that materialize a permutation of all `2^n`
/// vertices.
pub const MAX_PERMUTATION_ORDER: usize = 14;
/// Bound on `n` for [`group_order`].
pub const MAX_GROUP_ORDER_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("vertex has length {found}, group acts on length {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("elements act on different lengths: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },
    #[error("map is not a bijection: {0} has two preimages")]
    NotABijection(Vertex),
    #[error(transparent)]
    Order(#[from] PosetError),
}

#[inline]
fn rho_bits(b: u64, n: usize) -> u64 {
    (b >> 1) | ((b & 1) << (n - 1))
}

#[inline]
fn xi_bits(b: u64, n: usize) -> u64 {
    b ^ (1u64 << (n - 1))
}

#[inline]
fn theta_bits(b: u64, n: usize) -> u64 {
    xi_bits(rho_bits(b, n), n)
}

#[inline]
fn theta_inverse_bits(b: u64, n: usize) -> u64 {
    let first = (b >> (n - 1)) & 1;
    ((b << 1) & mask(n)) | (first ^ 1)
}

#[inline]
fn tau_bits(b: u64, n: usize) -> u64 {
    b.reverse_bits() >> (64 - n)
}

pub fn apply_rho(v: &Vertex) -> Vertex {
    Vertex::from_raw(v.len(), rho_bits(v.bits(), v.len()))
}

pub fn apply_xi(v: &Vertex) -> Vertex {
    Vertex::from_raw(v.len(), xi_bits(v.bits(), v.len()))
}

pub fn apply_theta(v: &Vertex) -> Vertex {
    Vertex::from_raw(v.len(), theta_bits(v.bits(), v.len()))
}

pub fn apply_theta_inverse(v: &Vertex) -> Vertex {
    Vertex::from_raw(v.len(), theta_inverse_bits(v.bits(), v.len()))
}

pub fn apply_tau(v: &Vertex) -> Vertex {
    Vertex::from_raw(v.len(), tau_bits(v.bits(), v.len()))
}

/// `theta^k . tau^r`, with `tau` applied first when `r = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    n: usize,
    k: usize,
    r: u8,
}

impl DihedralElement {
    /// `k` is reduced modulo `2n`; any nonzero `reflect` counts as 1.
    pub fn new(n: usize, k: i64, reflect: bool) -> Self {
        assert!(n >= 1, "dihedral action needs n >= 1");
        let period = 2 * n as i64;
        DihedralElement {
            n,
            k: k.rem_euclid(period) as usize,
            r: reflect as u8,
        }
    }

    pub fn identity(n: usize) -> Self {
        DihedralElement::new(n, 0, false)
    }

    pub fn theta(n: usize) -> Self {
        DihedralElement::new(n, 1, false)
    }

    pub fn tau(n: usize) -> Self {
        DihedralElement::new(n, 0, true)
    }

    /// All `4n` canonical elements, rotations first.
    pub fn all(n: usize) -> Vec<Self> {
        [false, true]
            .into_iter()
            .flat_map(|r| (0..2 * n as i64).map(move |k| DihedralElement::new(n, k, r)))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Power of `theta`, in `0..2n`.
    pub fn rotation(&self) -> usize {
        self.k
    }

    pub fn is_reflection(&self) -> bool {
        self.r == 1
    }

    pub fn apply(&self, v: &Vertex) -> Result<Vertex, SymmetryError> {
        if v.len() != self.n {
            return Err(SymmetryError::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(Vertex::from_raw(self.n, self.apply_bits(v.bits())))
    }

    fn apply_bits(&self, mut b: u64) -> u64 {
        let n = self.n;
        if self.r == 1 {
            b = tau_bits(b, n);
        }
        // theta^n is the complement, so reduce the number of single steps
        if self.k >= n {
            b ^= mask(n);
        }
        for _ in 0..self.k % n {
            b = theta_bits(b, n);
        }
        b
    }

    /// `self . other`, i.e. `other` applied first.
    ///
    /// Uses `tau . theta^k = theta^-k . tau` to move the reflection right.
    pub fn compose(&self, other: &DihedralElement) -> Result<DihedralElement, SymmetryError> {
        if self.n != other.n {
            return Err(SymmetryError::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let k = if self.r == 1 {
            self.k as i64 - other.k as i64
        } else {
            self.k as i64 + other.k as i64
        };
        Ok(DihedralElement::new(self.n, k, (self.r ^ other.r) == 1))
    }

    pub fn inverse(&self) -> DihedralElement {
        if self.r == 1 {
            *self
        } else {
            DihedralElement::new(self.n, -(self.k as i64), false)
        }
    }

    pub fn to_permutation(&self) -> VertexPermutation {
        VertexPermutation::from_bits_fn(self.n, |b| self.apply_bits(b))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.r) {
            (0, 0) => f.write_str("id"),
            (k, 0) => write!(f, "theta^{k}"),
            (0, _) => f.write_str("tau"),
            (k, _) => write!(f, "theta^{k} tau"),
        }
    }
}

/// A map on the `2^n` vertices, stored as an image table indexed by bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPermutation {
    n: usize,
    images: Vec<u64>,
}

impl VertexPermutation {
    fn from_bits_fn(n: usize, f: impl Fn(u64) -> u64) -> Self {
        assert!(
            (1..=MAX_PERMUTATION_ORDER).contains(&n),
            "vertex tables are limited to n <= {MAX_PERMUTATION_ORDER}"
        );
        VertexPermutation {
            n,
            images: (0..=mask(n)).map(f).collect(),
        }
    }

    /// Tabulates `f`; the result may fail [`VertexPermutation::check_bijection`].
    pub fn from_fn(n: usize, f: impl Fn(&Vertex) -> Vertex) -> Self {
        VertexPermutation::from_bits_fn(n, |b| f(&Vertex::from_raw(n, b)).bits() & mask(n))
    }

    pub fn identity(n: usize) -> Self {
        VertexPermutation::from_bits_fn(n, |b| b)
    }

    pub fn rho(n: usize) -> Self {
        VertexPermutation::from_bits_fn(n, |b| rho_bits(b, n))
    }

    pub fn xi(n: usize) -> Self {
        VertexPermutation::from_bits_fn(n, |b| xi_bits(b, n))
    }

    pub fn theta(n: usize) -> Self {
        VertexPermutation::from_bits_fn(n, |b| theta_bits(b, n))
    }

    pub fn theta_inverse(n: usize) -> Self {
        VertexPermutation::from_bits_fn(n, |b| theta_inverse_bits(b, n))
    }

    pub fn tau(n: usize) -> Self {
        VertexPermutation::from_bits_fn(n, |b| tau_bits(b, n))
    }

    pub fn complement(n: usize) -> Self {
        VertexPermutation::from_bits_fn(n, |b| b ^ mask(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, v: &Vertex) -> Vertex {
        Vertex::from_raw(self.n, self.images[v.bits() as usize])
    }

    /// `self . other`.
    pub fn compose(&self, other: &VertexPermutation) -> Result<Self, SymmetryError> {
        if self.n != other.n {
            return Err(SymmetryError::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(VertexPermutation {
            n: self.n,
            images: other
                .images
                .iter()
                .map(|&b| self.images[b as usize])
                .collect(),
        })
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = VertexPermutation::identity(self.n);
        for _ in 0..e {
            acc = self.compose(&acc).expect("same n");
        }
        acc
    }

    pub fn check_bijection(&self) -> Result<(), SymmetryError> {
        let mut seen = vec![false; self.images.len()];
        for &b in &self.images {
            if std::mem::replace(&mut seen[b as usize], true) {
                return Err(SymmetryError::NotABijection(Vertex::from_raw(self.n, b)));
            }
        }
        Ok(())
    }
}

#[inline]
fn adjacent(a: u64, b: u64) -> bool {
    covers_bits(a, b) || covers_bits(b, a)
}

/// First Hasse edge (in edge-stream order) whose image under `f` is not an
/// edge.
pub fn find_broken_edge(
    f: &VertexPermutation,
    par: Parallelism,
) -> Result<Option<HasseEdge>, SymmetryError> {
    check_order(f.n, MAX_PERMUTATION_ORDER)?;
    f.check_bijection()?;
    let n = f.n;
    let lowers: Vec<u64> = (0..=mask(n)).collect();
    let broken = exec::find_first(&lowers, par, |&x| {
        let mut uppers = Vec::new();
        for_each_up_cover(x, n, |y| uppers.push(y));
        uppers.sort_unstable();
        uppers
            .into_iter()
            .find(|&y| !adjacent(f.images[x as usize], f.images[y as usize]))
            .map(|y| HasseEdge {
                lower: Vertex::from_raw(n, x),
                upper: Vertex::from_raw(n, y),
            })
    });
    Ok(broken)
}

/// Whether `f` maps Hasse edges onto Hasse edges.
///
/// `f` is checked to be a bijection first; a bijection sending every edge to
/// an edge is injective on edges, so the image has the same edge count and
/// adjacency is preserved in both directions.
pub fn is_graph_automorphism(f: &VertexPermutation) -> Result<bool, SymmetryError> {
    Ok(find_broken_edge(f, Parallelism::default())?.is_none())
}

/// The orbit of `v` under repeated `theta`, starting at `v` and stopping
/// before the return to `v`.
pub fn theta_cycle(v: &Vertex) -> Vec<Vertex> {
    let mut cycle = vec![*v];
    let mut cur = apply_theta(v);
    while cur != *v {
        cycle.push(cur);
        cur = apply_theta(&cur);
    }
    cycle
}

/// Every `theta` cycle, each starting at its lexicographically smallest
/// member, sorted by that member.
pub fn theta_cycles(n: usize) -> Result<Vec<Vec<Vertex>>, SymmetryError> {
    check_order(n, MAX_PERMUTATION_ORDER)?;
    let mut seen = vec![false; 1usize << n];
    let mut cycles = Vec::new();
    for b in 0..=mask(n) {
        if seen[b as usize] {
            continue;
        }
        let cycle = theta_cycle(&Vertex::from_raw(n, b));
        for v in &cycle {
            seen[v.bits() as usize] = true;
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// How vertices are written in cycle and orbit reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexStyle {
    /// `0101`
    #[default]
    Bits,
    /// `(0,1,0,1)`
    Tuple,
}

impl VertexStyle {
    pub fn render(self, v: &Vertex) -> String {
        match self {
            VertexStyle::Bits => v.to_string(),
            VertexStyle::Tuple => v.to_tuple_string(),
        }
    }
}

/// `v1 -> v2 -> ... -> v1`
pub fn format_cycle(cycle: &[Vertex], style: VertexStyle) -> String {
    let mut parts: Vec<String> = cycle.iter().map(|v| style.render(v)).collect();
    if let Some(first) = cycle.first() {
        parts.push(style.render(first));
    }
    parts.join(" -> ")
}

/// Orbit partition under the group generated by `generators`. Orbits are
/// sorted by their smallest member and each orbit is sorted.
pub fn vertex_orbits(
    n: usize,
    generators: &[VertexPermutation],
) -> Result<Vec<Vec<Vertex>>, SymmetryError> {
    check_order(n, MAX_PERMUTATION_ORDER)?;
    for g in generators {
        if g.n != n {
            return Err(SymmetryError::ModulusMismatch {
                left: n,
                right: g.n,
            });
        }
        g.check_bijection()?;
    }
    let mut orbit_of = vec![usize::MAX; 1usize << n];
    let mut orbits: Vec<Vec<Vertex>> = Vec::new();
    for start in 0..=mask(n) {
        if orbit_of[start as usize] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start as usize] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let b = members[i];
            for g in generators {
                let img = g.images[b as usize];
                if orbit_of[img as usize] == usize::MAX {
                    orbit_of[img as usize] = id;
                    members.push(img);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(
            members
                .into_iter()
                .map(|b| Vertex::from_raw(n, b))
                .collect(),
        );
    }
    // scanning starts in increasing order, so orbits are already sorted by minimum
    Ok(orbits)
}

/// One orbit per line, members separated by spaces.
pub fn format_orbits(orbits: &[Vec<Vertex>], style: VertexStyle) -> String {
    orbits
        .iter()
        .map(|o| {
            o.iter()
                .map(|v| style.render(v))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// `{"orbits":[["00000", ...], ...]}`
pub fn orbits_to_json(orbits: &[Vec<Vertex>]) -> String {
    serde_json::json!({ "orbits": orbits }).to_string()
}

/// Number of distinct vertex permutations among the `4n` elements
/// `theta^k tau^r`.
pub fn group_order(n: usize) -> Result<usize, SymmetryError> {
    group_order_with(n, Parallelism::default())
}

pub fn group_order_with(n: usize, par: Parallelism) -> Result<usize, SymmetryError> {
    check_order(n, MAX_GROUP_ORDER_N)?;
    let elements = DihedralElement::all(n);
    let perms = exec::map_collect(&elements, par, |g| g.to_permutation());
    Ok(perms.into_iter().collect::<HashSet<_>>().len())
}
