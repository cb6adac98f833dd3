pub mod decay;
pub mod equilibria;
pub mod error;
pub mod gevrey;
pub mod par;
pub mod quadrature;
pub mod relkin;
pub mod spectral;
pub mod volterra;

pub use error::{Error, Result};
