pub mod gauss;
pub mod hecke;
pub mod analytic;
pub mod afe;
pub mod kloosterman;
pub mod rng;
pub mod moment;
pub mod suite;
