use alloc::string::String;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numerics.
///
/// Variants carry enough context for the caller to tell *which* factor,
/// location or threshold was involved; the CLI maps them onto exit codes.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    /// Γ(z) was requested at a non-positive integer.
    #[error("gamma function has a pole at z = {at}")]
    GammaPole {
        /// The offending argument.
        at: f64,
    },

    /// A parameter is outside its documented domain.
    #[error("invalid parameter `{name}` = {value}: expected {expected}")]
    InvalidParameter {
        /// Parameter name as it appears in the API.
        name: &'static str,
        /// Value that was rejected.
        value: f64,
        /// Human-readable description of the admissible range.
        expected: &'static str,
    },

    /// Structural problem with an H-function parameter block.
    #[error("invalid H-function parameters: {0}")]
    InvalidHParams(String),

    /// A numerator gamma factor of Θ(ξ) is singular at the requested point.
    #[error("Θ(ξ) has a pole at ξ = {xi} from numerator factor {factor}")]
    ThetaPole {
        /// Index of the factor in evaluation order (lower list first, then upper).
        factor: usize,
        /// Real part of the evaluation point.
        xi: f64,
    },

    /// Two or more residue-series poles coincide and do not cancel.
    #[error("pole collision of order {order} at ξ = {xi}; the residue series assumes simple poles")]
    PoleCollision {
        /// Location of the multiple pole.
        xi: f64,
        /// Net pole order found there.
        order: i32,
    },

    /// There is no pole-free vertical strip for the Mellin-Barnes contour.
    #[error("no admissible contour strip: left poles reach {left}, right poles start at {right}")]
    EmptyStrip {
        /// Rightmost pole of the left family.
        left: f64,
        /// Leftmost pole of the right family.
        right: f64,
    },

    /// The requested contour abscissa lies outside the pole-free strip.
    #[error("contour abscissa γ = {gamma} is outside the strip ({left}, {right})")]
    ContourOutsideStrip {
        /// Requested abscissa.
        gamma: f64,
        /// Left edge of the strip.
        left: f64,
        /// Right edge of the strip.
        right: f64,
    },

    /// The Mellin-Barnes integrand does not decay along the vertical line.
    #[error("Mellin-Barnes integrand does not decay on a vertical contour (θ = {theta} ≤ 0)")]
    NonConvergentIntegrand {
        /// The decay exponent ΣA − ΣA + ΣB − ΣB of the parameter block.
        theta: f64,
    },

    /// An iterative or quadrature procedure missed its accuracy target.
    #[error("{what} did not converge (error estimate {estimate:e})")]
    NonConvergence {
        /// Which procedure failed.
        what: &'static str,
        /// Last available error estimate.
        estimate: f64,
    },

    /// A series route was asked to evaluate outside its convergence region.
    #[error("route `{route}` is not valid at similarity variable y^α = {similarity}")]
    Region {
        /// Route name.
        route: &'static str,
        /// The value of |x|^α / (η t^β) that was rejected.
        similarity: f64,
    },

    /// The requested quantity is infinite at x = 0.
    #[error("kernel is singular at x = 0 for these parameters")]
    SingularAtOrigin,

    /// small_x_behavior is undefined at α = 1, where the two regimes meet.
    #[error("small-|x| expansion has no separate regimes at alpha = 1")]
    Regime,

    /// Moment order outside the window where the moment integral converges.
    #[error("moment order δ = {delta} is not admissible for α = {alpha}")]
    Inadmissible {
        /// Moment order.
        delta: f64,
        /// Space-fractional order.
        alpha: f64,
    },

    /// The moment integrand decays too slowly to integrate.
    #[error("moment integral diverges in the tail: δ = {delta} ≥ α = {alpha}")]
    TailDivergence {
        /// Moment order.
        delta: f64,
        /// Space-fractional order.
        alpha: f64,
    },

    /// Spectral truncation error exceeds the configured tolerance.
    #[error("spectral resolution insufficient: tail ratio {ratio:e} exceeds tol {tol:e}")]
    Resolution {
        /// Measured relative magnitude of the retained spectrum at the cutoff.
        ratio: f64,
        /// Configured tolerance.
        tol: f64,
    },

    /// The field does not decay to the boundary floor at the grid edges.
    #[error("boundary values reach {ratio:e} of the maximum (floor {floor:e}); widen the domain")]
    BoundaryFloor {
        /// max(|f(edge)|) / max|f|.
        ratio: f64,
        /// Configured floor.
        floor: f64,
    },

    /// Two fields that must share a grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A time-step plan and the field handed to it disagree.
    #[error("time-step history mismatch: expected {expected} snapshots, found {found}")]
    HistoryMismatch {
        /// Snapshots the plan expected.
        expected: usize,
        /// Snapshots actually held.
        found: usize,
    },

    /// Talbot results moved by more than the tolerance under node doubling.
    #[error("Talbot inversion unstable: node doubling changed the result by {change:e}")]
    Oscillation {
        /// Absolute change between the two node counts.
        change: f64,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::InvalidParameter { name, value, expected }
    }
}
