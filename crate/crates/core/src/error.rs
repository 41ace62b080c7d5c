use alloc::string::String;

use crate::table::Cell;
use crate::varset::VarSet;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("schema declares no variables")]
    EmptySchema,
    #[error("schema declares {0} variables; at most {max} are supported", max = crate::varset::MAX_VARS)]
    TooManyVariables(usize),
    #[error("variable {var} has no levels")]
    NoLevels { var: usize },
    #[error("variable name {0:?} is used more than once")]
    DuplicateName(String),
    #[error("schema has {names} names but {levels} level counts")]
    SchemaShape { names: usize, levels: usize },
    #[error("schemas differ")]
    SchemaMismatch,

    #[error("cell {cell} has {found} coordinates, expected {expected}")]
    CellArity {
        cell: Cell,
        expected: usize,
        found: usize,
    },
    #[error("cell {cell}: level {level} of variable {var} is outside 1..={levels}")]
    LevelOutOfRange {
        cell: Cell,
        var: usize,
        level: u32,
        levels: u32,
    },
    #[error("record id {0} appears more than once")]
    DuplicateRecordId(usize),

    #[error("variable set is empty")]
    EmptyVarSet,
    #[error("variable set {set} is not contained in {within}")]
    NotSubset { set: VarSet, within: VarSet },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("variable sets overlap: {0} and {1}")]
    Overlapping(VarSet, VarSet),

    #[error("generating class has no members")]
    EmptyGeneratingClass,
    #[error("generating class member {0} is empty")]
    EmptyMember(usize),

    #[error("swap set {0} must be a nonempty proper subset of {1}")]
    InvalidSwapSet(VarSet, VarSet),
    #[error("swapping {i} and {j} on {set} leaves the records unchanged")]
    NotEffective { i: Cell, j: Cell, set: VarSet },
    #[error("cell {0} holds no record to swap")]
    InsufficientCount(Cell),
    #[error("separator list does not decompose {0}")]
    SeparatorMismatch(VarSet),

    #[error("move entries sum to {0}, expected 0")]
    MoveSumNonzero(i64),
    #[error("move would drive cell {0} negative")]
    NegativeCount(Cell),
    #[error("not a primitive move: {0}")]
    NotPrimitive(&'static str),
    #[error("move does not vanish on the protected marginals")]
    NotAMove,
    #[error("move is not a two-record swap: variable {var} breaks {{i_m, j_m}} = {{i'_m, j'_m}}")]
    NotASwap { var: usize },
    #[error("generating class covers {covered} but the schema has {all}")]
    IncompleteCover { covered: VarSet, all: VarSet },

    #[error("{k} variables exceeds the brute-force limit of {limit}")]
    OracleLimit { k: usize, limit: usize },
}
