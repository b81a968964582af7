//! Error types carrying explicit witnesses.
//!
//! Every structural failure names the offending data (a row, a triple, a pair
//! of group elements) so that a rejected input can be debugged from the
//! message alone.

use thiserror::Error;

/// Failures while constructing or manipulating finite groups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("row not a permutation, row {0}")]
    RowNotPermutation(usize),
    #[error("column not a permutation, column {0}")]
    ColumnNotPermutation(usize),
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    BadIdentity(usize),
    #[error("non-associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("group order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("subgroup not closed: {0} * {1} = {2} is not a member")]
    NotClosed(usize, usize, usize),
    #[error("subgroup does not contain the identity")]
    NoIdentityInSubgroup,
    #[error("subgroup not normal: conjugating {k} by {g} leaves the subgroup")]
    NotNormal { g: usize, k: usize },
    #[error("not a homomorphism: map({0} * {1}) != map({0}) * map({1})")]
    NotAHom(usize, usize),
    #[error("homomorphism is not surjective (misses {0})")]
    NotSurjective(usize),
    #[error("homomorphism is not injective ({0} and {1} collide)")]
    NotInjective(usize, usize),
    #[error("element {0} out of range for group of order {1}")]
    ElementRange(usize, usize),
    #[error("map length {got} does not match group order {want}")]
    MapLength { got: usize, want: usize },
}

/// Failures while parsing input documents.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("line {line}: {source}")]
    Group { line: usize, source: GroupError },
}

/// Failures of group-action validity (Γ-sets, Γ-groups, G-objects).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("action table has {got} rows, expected {want}")]
    TableShape { got: usize, want: usize },
    #[error("identity does not act trivially (moves point {0})")]
    IdentityMoves(usize),
    #[error("not an action: ({gamma}, {delta}) disagree at point {point}")]
    NotAnAction { gamma: usize, delta: usize, point: usize },
    #[error("row {0} of the action table is not a permutation")]
    RowNotPermutation(usize),
    #[error("row {row} is not an automorphism: breaks product ({a}, {b})")]
    NotAutomorphism { row: usize, a: usize, b: usize },
    #[error("action is not equivariant at (gamma {gamma}, g {g}, point {point})")]
    NotEquivariant { gamma: usize, g: usize, point: usize },
    #[error("mismatched ambient groups")]
    GroupMismatch,
    #[error("subgroup is not a subgroup of the acting group")]
    NotASubgroup,
}

/// Failures specific to cocycles and torsors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsorError {
    #[error("cocycle condition fails at ({0}, {1})")]
    CocycleCondition(usize, usize),
    #[error("cocycle does not map the identity to the identity")]
    CocycleIdentity,
    #[error("cocycle table has {got} entries, expected {want}")]
    CocycleLength { got: usize, want: usize },
    #[error("action is not simply transitive: {0} points under a group of order {1}")]
    NotSimplyTransitive(usize, usize),
    #[error("the two actions do not commute at (h {h}, g {g}, point {point})")]
    ActionsDoNotCommute { h: usize, g: usize, point: usize },
    #[error("group mismatch: middle groups of the contracted product differ")]
    MiddleGroupMismatch,
    #[error("group mismatch: torsors live under different gamma-groups")]
    GammaGroupMismatch,
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Failures in the twisting engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("object and cocycle live over different gamma-groups")]
    GammaGroupMismatch,
    #[error("objects are not locally isomorphic")]
    NotLocallyIsomorphic,
    #[error("second cocycle is not a cocycle for the inner form of the first")]
    NotInnerForm,
    #[error("subgroup is not gamma-stable (gamma {gamma} moves {k} outside)")]
    NotGammaStable { gamma: usize, k: usize },
    #[error("internal invariant breach: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Torsor(#[from] TorsorError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Failures in the cover-specialization module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("cover map onto gamma is not surjective")]
    GammaMapNotSurjective,
    #[error("cover map onto the cover group is not surjective")]
    CoverMapNotSurjective,
    #[error("cover homomorphisms have mismatched sources")]
    SourceMismatch,
    #[error("target cocycle does not live over the cover's groups with trivial action")]
    BadTargetCocycle,
    #[error("(*) fails: the quotient of the target torsor does not match the scalar extension")]
    StarConditionFails,
    #[error("no common quotient: the torsors have no isomorphic G/K-quotient")]
    NoCommonQuotient,
    #[error("embedding into the symmetric group is not injective")]
    NotAnEmbedding,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Torsor(#[from] TorsorError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Action(#[from] ActionError),
}
