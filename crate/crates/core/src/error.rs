use thiserror::Error;

/// Errors raised by the library.
///
/// Most variants are input validation failures. [`Error::Consistency`] is
/// different: it signals that two independent computations disagreed, which
/// should never happen on valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed triangulation document: {0}")]
    Schema(String),
    #[error("edge `{edge}` occurs in {count} triangle slot(s), expected {expected}")]
    Incidence {
        edge: String,
        count: usize,
        expected: usize,
    },
    #[error("triangle {triangle} repeats edge `{edge}`")]
    RepeatedEdge { triangle: usize, edge: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("triangulation has no internal edge")]
    NoInternalEdge,
    #[error("triangulation has an interior marked point (puncture) surrounded by {corners} corner(s)")]
    Puncture { corners: usize },
    #[error("derived quiver is not gentle: {0}")]
    NotGentle(String),

    #[error("cannot parse string `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no arrow {from} -> {to} (letter {position})")]
    NoArrow {
        from: String,
        to: String,
        position: usize,
    },
    #[error("several arrows {from} -> {to}; the ASCII form cannot tell them apart")]
    AmbiguousArrow { from: String, to: String },
    #[error("letter {position} does not start where letter {prev} ends", prev = position - 1)]
    NotComposable { position: usize },
    #[error("letter {position} cancels letter {prev}", prev = position - 1)]
    Cancellation { position: usize },
    #[error("letters {prev} and {position} contain the relation {first} then {second}", prev = position - 1)]
    Relation {
        position: usize,
        first: String,
        second: String,
    },
    #[error("a string without letters needs a base vertex")]
    MissingBase,

    #[error("entries {position} and {next} of the crossing sequence share no triangle", next = position + 1)]
    NotAdjacent { position: usize },
    #[error("entries {position} and {next} of the crossing sequence share two triangles; give a string instead", next = position + 1)]
    AmbiguousSequence { position: usize },
    #[error("crossing sequence is empty")]
    EmptySequence,
    #[error("snake graph gluing failed: {0}")]
    Gluing(String),
    #[error("overlap is not a crossing overlap")]
    NotCrossingOverlap,
    #[error("grafting precondition failed: {0}")]
    Grafting(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("path enumeration from vertex `{vertex}` exceeded {bound} paths")]
    PathBound { vertex: String, bound: usize },

    #[error("internal consistency fault: {0}")]
    Consistency(String),
}

impl Error {
    /// True for faults where two computations disagreed, as opposed to bad input.
    pub fn is_consistency_fault(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
