pub mod bimaterial;
pub mod error;
pub mod ll_constants;
pub mod quadrature;
pub mod sif_perturbation;
pub mod special_functions;
pub mod weight_functions;
pub mod wiener_hopf;
