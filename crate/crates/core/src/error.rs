use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A vector did not have the length of the group or lattice it was used with.
    LengthMismatch { expected: usize, found: usize },
    /// A cyclic factor of order < 2, or a split index past the last factor.
    InvalidGroup(String),
    /// `D.(D-K)` was odd, which cannot happen on an even-type Riemann-Roch lattice.
    Parity { class: Vec<i64> },
    NotARoot { class: Vec<i64> },
    /// Character sheaf `(1/d) sum c_i Delta_i` was not integral.
    NonIntegralCharacterSheaf { character: Vec<u32> },
    UnknownComponent(String),
    /// A class is not an integral combination of the chosen basis of `Pic X`.
    NotInLattice { class: Vec<i64> },
    /// Computed `h^1 < 0`: the vanishing assumption for nef classes failed.
    NegativeH1 { class: Vec<i64>, h0: u64, h2: u64, chi: i64 },
    /// The torsion twist of a numerically trivial expression was not unique.
    TorsionNotUnique { candidates: usize },
    /// The semigroup and pushforward routes disagreed.
    MethodDisagreement(String),
    /// The cone `{D : D.g >= 0}` contains a line.
    NonPointedCone,
    OrbitCap { cap: usize },
    /// The surface lacks a lattice isometry `Pic Y -> Pic X / Tors X`.
    NoLatticeIsometry,
    Validation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::InvalidGroup(msg) => write!(f, "invalid group: {msg}"),
            Error::Parity { class } => {
                write!(f, "parity violation: D.(D-K) is odd for {class:?}")
            }
            Error::NotARoot { class } => write!(f, "{class:?} is not a (-2)-class"),
            Error::NonIntegralCharacterSheaf { character } => {
                write!(f, "character sheaf of {character:?} is not integral")
            }
            Error::UnknownComponent(name) => write!(f, "unknown component `{name}`"),
            Error::NotInLattice { class } => {
                write!(f, "{class:?} is not an integral combination of the basis")
            }
            Error::NegativeH1 { class, h0, h2, chi } => write!(
                f,
                "negative h1 for {class:?} (h0={h0}, h2={h2}, chi={chi}): vanishing assumption violated"
            ),
            Error::TorsionNotUnique { candidates } => write!(
                f,
                "expected exactly one torsion twist with a section, found {candidates}"
            ),
            Error::MethodDisagreement(msg) => write!(f, "methods disagree: {msg}"),
            Error::NonPointedCone => write!(f, "cone is not pointed"),
            Error::OrbitCap { cap } => write!(f, "orbit exceeded cap of {cap} elements"),
            Error::NoLatticeIsometry => write!(f, "Pic X has no basis from pullbacks with the Gram matrix of Pic Y"),
            Error::Validation(msg) => write!(f, "validation failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
