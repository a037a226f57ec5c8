//! A graded poset on binary words whose maximal chains are in bijection with
//! alternating sign matrices, together with a dihedral group acting on its
//! Hasse diagram.
//!
//! * [`seq`]: sign, alternating and constrained sequences; vertices.
//! * [`asm`]: alternating sign matrices and brute-force enumeration oracles.
//! * [`poset`]: cover relation, Hasse edges, order test, chain counting.
//! * [`chain`]: maximal chains and the chain/matrix bijection.
//! * [`symmetry`]: the rotation-with-flip and reversal maps and their group.
//! * [`verify`]: the invariant suite behind `asmposet verify`.

pub mod asm;
pub mod chain;
pub mod cli;
pub mod exec;
pub mod poset;
pub mod seq;
pub mod symmetry;
pub mod verify;

pub use asm::{parse_asm, serialize_asm, validate_asm, Asm, AsmError};
pub use chain::{asm_to_chain, chain_to_asm, validate_chain, Chain, ChainError};
pub use exec::Parallelism;
pub use poset::{count_maximal_chains, hasse_edges, is_cover, leq, HasseEdge, PosetError};
pub use seq::{AlternatingSequence, ConstrainedSequence, SeqError, SignSequence, Vertex};
pub use symmetry::{DihedralElement, SymmetryError, VertexPermutation};
