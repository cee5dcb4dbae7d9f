//! Khovanov–Rozansky sl(n) link homology over the rationals.
//!
//! Links are resolved into a cube of planar trivalent graphs. Each graph
//! carries a Koszul matrix factorization whose cohomology is computed one
//! graded piece at a time with exact linear algebra; the cube maps between
//! neighbouring resolutions are then assembled into a bigraded complex.
//!
//! The [`oracle`] module evaluates the same invariants by skein recursion
//! and is independent of the homological machinery.

pub mod graph;
pub mod homology;
pub mod link;
pub mod mf;
pub mod oracle;
pub mod parse;
pub mod poly;

mod par;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("substitution binding for x{0} is not homogeneous")]
    InhomogeneousBinding(u32),
    #[error("factorizations have different levels ({0} and {1})")]
    LevelMismatch(usize, usize),
    #[error("row transformation breaks homogeneity")]
    DegreeViolation,
    #[error("row {0} cannot be used to exclude x{1}")]
    NotExcludable(usize, u32),
    #[error("potential is not zero")]
    PotentialNonzero,
    #[error("unknown variable x{0}")]
    UnknownVariable(u32),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("no relation applies to the graph")]
    IrreducibleGraph,
    #[error("skein recursion exceeded depth {0}")]
    RecursionDepthExceeded(usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("inconsistent orientation at edge {0}")]
    InconsistentOrientation(u32),
    #[error("braid generator {0} out of range for {1} strands")]
    GeneratorOutOfRange(i64, usize),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
