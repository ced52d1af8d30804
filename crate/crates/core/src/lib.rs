pub mod ambient;
pub mod chartcalc;
pub mod cli;
pub mod conformal;
pub mod dunkl;
pub mod linalg;
pub mod poly;
pub mod rootsys;
pub mod sampling;
pub mod scalar;
pub mod verify;
