use alloc::string::String;

/// Errors raised by constructors and checked operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("a composition needs at least one part")]
    EmptyComposition,
    #[error("parts must be positive")]
    ZeroPart,
    #[error("partition parts must be weakly decreasing")]
    NotDecreasing,
    #[error("cannot parse {0:?} as a list of parts")]
    Parse(String),
    #[error("{alpha} does not refine {beta}")]
    NotRefinement { alpha: String, beta: String },
    #[error("element {element} out of range for a poset on {n} elements")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("relations contain a cycle")]
    Cycle,
    #[error("labels must be a permutation of 1..={n}")]
    InvalidLabels { n: usize },
    #[error("weight of element {element} must be positive")]
    NonPositiveWeight { element: usize },
    #[error("expected {expected} {what}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("posets are limited to {max} elements, got {n}")]
    TooManyElements { n: usize, max: usize },
    #[error("size guard: {n} elements exceeds the limit of {max}")]
    SizeGuard { n: usize, max: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("elements {a} and {b} are comparable")]
    Comparable { a: usize, b: usize },
    #[error("weights {d1} + {d2} do not sum to {total}")]
    BadSplit { d1: u32, d2: u32, total: u32 },
    #[error("poset is not naturally labeled")]
    NotNaturallyLabeled,
    #[error("inner shape is not contained in the outer shape")]
    InvalidShape,
    #[error("sizes differ: {left} vs {right}")]
    SizeMismatch { left: u32, right: u32 },
    #[error("{alpha} is not a coarsening of {d}")]
    NotCoarsening { alpha: String, d: String },
}
