//! Maximal chains and their bijection with alternating sign matrices.
//!
//! A maximal chain `x_0 < x_1 < ... < x_n` runs from the all-zeros word to the
//! all-ones word in `n` cover steps. Its step differences `x_i - x_{i-1}` are
//! the rows of an ASM; conversely the partial row sums of an ASM are a chain.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asm::{self, Asm};
use crate::exec::{self, Parallelism};
use crate::poset::{check_order, covers_bits, up_covers, PosetError};
use crate::seq::{SeqError, Vertex, MAX_VERTEX_LEN};

/// Default bound on `n` for chain enumeration; the output grows like
/// `exp(c n^2)`.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("chain has no vertices")]
    Empty,
    #[error("vertex {index} has length {found}, expected {expected}")]
    MixedLengths {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("a maximal chain on words of length {n} has {expected} vertices, got {found}")]
    WrongLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("a maximal chain starts at all zeros and ends at all ones")]
    BadEndpoints,
    #[error("vertex {0} does not cover vertex {prev}", prev = .0 - 1)]
    NotACover(usize),
    #[error("bad vertex: {0}")]
    Vertex(#[from] SeqError),
    #[error("invalid chain JSON: {0}")]
    Json(String),
}

/// A validated maximal chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    vertices: Vec<Vertex>,
}

impl Chain {
    /// Length of the words, equal to the number of steps.
    pub fn order(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn passes_through(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    /// `{"n":3,"vertices":["000","010","101","111"]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ChainJson {
            n: self.order(),
            vertices: self.vertices.clone(),
        })
        .expect("chain serializes")
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ChainJson {
    n: usize,
    vertices: Vec<Vertex>,
}

/// Checks lengths, then endpoints, then each step in order.
pub fn validate_chain(vs: &[Vertex]) -> Result<Chain, ChainError> {
    let first = vs.first().ok_or(ChainError::Empty)?;
    let n = first.len();
    if let Some(i) = vs.iter().position(|v| v.len() != n) {
        return Err(ChainError::MixedLengths {
            index: i,
            found: vs[i].len(),
            expected: n,
        });
    }
    if vs.len() != n + 1 {
        return Err(ChainError::WrongLength {
            n,
            expected: n + 1,
            found: vs.len(),
        });
    }
    if *first != Vertex::zero(n) || vs[n] != Vertex::ones(n) {
        return Err(ChainError::BadEndpoints);
    }
    for i in 1..=n {
        if !covers_bits(vs[i - 1].bits(), vs[i].bits()) {
            return Err(ChainError::NotACover(i));
        }
    }
    Ok(Chain {
        vertices: vs.to_vec(),
    })
}

/// Reads chain JSON, or whitespace-separated bitstrings such as
/// `000 010 101 111`.
pub fn parse_chain(text: &str) -> Result<Chain, ChainError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let parsed: ChainJson =
            serde_json::from_str(trimmed).map_err(|e| ChainError::Json(e.to_string()))?;
        let chain = validate_chain(&parsed.vertices)?;
        if chain.order() != parsed.n {
            return Err(ChainError::Json(format!(
                "n is {} but the vertices have length {}",
                parsed.n,
                chain.order()
            )));
        }
        return Ok(chain);
    }
    let vs = trimmed
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<Vec<Vertex>, _>>()?;
    validate_chain(&vs)
}

/// Row `i` of the matrix is `x_i - x_{i-1}`.
pub fn chain_to_asm(c: &Chain) -> Asm {
    let rows: Vec<Vec<i8>> = c
        .vertices
        .windows(2)
        .map(|w| w[1].difference(&w[0]))
        .collect();
    let a = Asm::from_rows_unchecked(&rows);
    debug_assert!(asm::revalidate(&a).is_ok());
    a
}

/// `x_i` is the sum of rows `1..=i`.
pub fn asm_to_chain(a: &Asm) -> Chain {
    let n = a.order();
    let mut sums = vec![0i64; n];
    let mut vertices = Vec::with_capacity(n + 1);
    vertices.push(Vertex::zero(n));
    for row in a.rows() {
        for (s, &e) in sums.iter_mut().zip(row) {
            *s += e as i64;
        }
        vertices.push(Vertex::from_coords(&sums).expect("partial row sums of an ASM are binary"));
    }
    debug_assert!(validate_chain(&vertices).is_ok());
    Chain { vertices }
}

/// Depth-first stream of maximal chains, taking up covers in lexicographic
/// order at every step. Guarded to `n <= 6`.
pub fn enumerate_maximal_chains(n: usize) -> Result<MaximalChains, PosetError> {
    check_order(n, DEFAULT_ENUMERATION_LIMIT)?;
    Ok(MaximalChains::from_prefix(vec![Vertex::zero(n)]))
}

/// [`enumerate_maximal_chains`] without the default size guard.
pub fn enumerate_maximal_chains_unguarded(n: usize) -> Result<MaximalChains, PosetError> {
    check_order(n, MAX_VERTEX_LEN)?;
    Ok(MaximalChains::from_prefix(vec![Vertex::zero(n)]))
}

/// Collects every maximal chain in depth-first order.
///
/// The parallel path splits on the first cover step and concatenates the
/// parts in order, so the result is identical to the sequential stream.
pub fn collect_maximal_chains(n: usize, par: Parallelism) -> Result<Vec<Chain>, PosetError> {
    check_order(n, DEFAULT_ENUMERATION_LIMIT)?;
    let zero = Vertex::zero(n);
    let firsts = up_covers(&zero);
    let parts = exec::map_collect(&firsts, par, |&first| {
        MaximalChains::from_prefix(vec![zero, first]).collect::<Vec<_>>()
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Iterator over the maximal chains extending a fixed prefix.
#[derive(Debug, Clone)]
pub struct MaximalChains {
    n: usize,
    base: usize,
    path: Vec<Vertex>,
    frames: Vec<(Vec<Vertex>, usize)>,
}

impl MaximalChains {
    /// `prefix` must start at the all-zeros word and consist of cover steps.
    fn from_prefix(prefix: Vec<Vertex>) -> Self {
        let n = prefix[0].len();
        let last = *prefix.last().expect("nonempty prefix");
        let base = prefix.len();
        let frames = if base == n + 1 {
            Vec::new()
        } else {
            vec![(up_covers(&last), 0)]
        };
        MaximalChains {
            n,
            base,
            path: prefix,
            frames,
        }
    }
}

impl Iterator for MaximalChains {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if self.base == self.n + 1 {
            // a full-length prefix is its own single chain
            self.base += 1;
            return Some(Chain {
                vertices: self.path.clone(),
            });
        }
        loop {
            let (covers, idx) = self.frames.last_mut()?;
            if *idx == covers.len() {
                self.frames.pop();
                if self.path.len() > self.base {
                    self.path.pop();
                }
                continue;
            }
            let next = covers[*idx];
            *idx += 1;
            self.path.push(next);
            if self.path.len() == self.n + 1 {
                let chain = Chain {
                    vertices: self.path.clone(),
                };
                self.path.pop();
                return Some(chain);
            }
            self.frames.push((up_covers(&next), 0));
        }
    }
}
