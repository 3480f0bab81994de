pub mod action;
pub mod census;
pub mod entropy;
pub mod lambda;
pub mod spectrum;
