use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid material: {0}")]
    InvalidMaterial(String),
    #[error("degenerate bimaterial (d* = {0:e} below threshold)")]
    DegenerateBimaterial(f64),
    #[error("gamma function pole at z = {0}")]
    PoleAtNonPositiveInteger(f64),
    #[error("point {re} + {im}i lies on a branch cut")]
    OnBranchCut { re: f64, im: f64 },
    #[error("pole on the integration contour at xi = {0}")]
    PoleOnContour(f64),
    #[error("quadrature did not converge (estimated error {0:e})")]
    QuadratureNonConvergence(f64),
    #[error("F33 depends on lambda (spread {0:e})")]
    LambdaDependenceDetected(f64),
    #[error("extrapolation unstable: {0}")]
    ExtrapolationUnstable(String),
    #[error("load decays too slowly: {0}")]
    LoadDecayTooSlow(String),
    #[error("output not real (relative imaginary residue {0:e})")]
    NonRealOutput(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
