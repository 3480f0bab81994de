//! Equilateral Regge action in three dimensions.
//!
//! Everything is in natural units with edge length `ℓ`. The mean edge
//! degree `μ = 6 N3 / N1` is carried as an exact rational.

use std::f64::consts::{PI, SQRT_2};

use thiserror::Error;

use crate::triangulation::{FVector, Triangulation};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActionError {
    #[error("mean edge degree must be positive")]
    NonPositiveMu,
    #[error("edge length must be positive and finite, got {0}")]
    NonPositiveLength(f64),
    #[error("tetrahedron count must be positive")]
    NoTetrahedra,
    #[error("6K/mu is not a valid edge count for K = {k}, mu = {mu}")]
    InvalidPair { k: u64, mu: Rational },
}

impl ActionError {
    pub fn name(&self) -> &'static str {
        match self {
            ActionError::NonPositiveMu => "NonPositiveMu",
            ActionError::NonPositiveLength(_) => "NonPositiveLength",
            ActionError::NoTetrahedra => "NoTetrahedra",
            ActionError::InvalidPair { .. } => "InvalidPair",
        }
    }
}

/// Dihedral angle of the regular tetrahedron, `acos(1/3)`.
pub fn dihedral_angle() -> f64 {
    (1.0f64 / 3.0).acos()
}

/// Edge degree with zero deficit angle, `2π / θ₃`.
pub fn flat_degree() -> f64 {
    2.0 * PI / dihedral_angle()
}

pub fn triangle_area(l: f64) -> f64 {
    3f64.sqrt() / 4.0 * l * l
}

pub fn tetrahedron_volume(l: f64) -> f64 {
    l * l * l / (6.0 * SQRT_2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometryConstants {
    pub edge_length: f64,
    pub dihedral_angle: f64,
    pub flat_degree: f64,
    pub triangle_area: f64,
    pub tetrahedron_volume: f64,
}

impl GeometryConstants {
    pub fn new(edge_length: f64) -> Result<Self, ActionError> {
        check_length(edge_length)?;
        Ok(Self {
            edge_length,
            dihedral_angle: dihedral_angle(),
            flat_degree: flat_degree(),
            triangle_area: triangle_area(edge_length),
            tetrahedron_volume: tetrahedron_volume(edge_length),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActionValue {
    pub total: f64,
    pub per_volume: f64,
    pub volume: f64,
}

fn check_length(l: f64) -> Result<(), ActionError> {
    if l > 0.0 && l.is_finite() {
        Ok(())
    } else {
        Err(ActionError::NonPositiveLength(l))
    }
}

fn check_mu(mu: Rational) -> Result<f64, ActionError> {
    if *mu.numer() == 0 {
        return Err(ActionError::NonPositiveMu);
    }
    // 1/μ, evaluated once from the exact fraction
    Ok(*mu.denom() as f64 / *mu.numer() as f64)
}

/// Sum of deficit angles over the edges, scaled by `ℓ / 16π`.
pub fn regge_action_direct(t: &Triangulation, l: f64) -> Result<ActionValue, ActionError> {
    check_length(l)?;
    let theta = dihedral_angle();
    let sum: f64 = t
        .edge_degree_table()
        .degrees()
        .iter()
        .map(|&d| 2.0 * PI - theta * d as f64)
        .sum();
    let total = l / (16.0 * PI) * sum;
    let volume = tetrahedron_volume(l) * t.size() as f64;
    Ok(ActionValue {
        total,
        per_volume: total / volume,
        volume,
    })
}

/// `(3ℓ/4) K (1/μ - 1/μ*)`.
pub fn regge_action_mu(k: u64, mu: Rational, l: f64) -> Result<f64, ActionError> {
    check_length(l)?;
    if k == 0 {
        return Err(ActionError::NoTetrahedra);
    }
    let inv_mu = check_mu(mu)?;
    Ok(0.75 * l * k as f64 * (inv_mu - 1.0 / flat_degree()))
}

/// Action per unit volume; independent of the number of tetrahedra.
pub fn normalized_action(mu: Rational, l: f64) -> Result<f64, ActionError> {
    check_length(l)?;
    let inv_mu = check_mu(mu)?;
    Ok(normalized_action_inv(inv_mu, l))
}

/// Same as [`normalized_action`] for a real-valued mean degree.
pub fn normalized_action_f64(mu: f64, l: f64) -> Result<f64, ActionError> {
    check_length(l)?;
    if !(mu > 0.0) {
        return Err(ActionError::NonPositiveMu);
    }
    Ok(normalized_action_inv(1.0 / mu, l))
}

fn normalized_action_inv(inv_mu: f64, l: f64) -> f64 {
    0.75 * l * (inv_mu - 1.0 / flat_degree()) / tetrahedron_volume(l)
}

/// Normalized action at edge count `n1` among `k` tetrahedra, written as
/// `gap * (n1 - 6K/μ*)` so that it is affine in `n1`.
pub fn level_action(k: u64, n1: u64, l: f64) -> f64 {
    action_gap(k, l) * (n1 as f64 - 6.0 * k as f64 / flat_degree())
}

/// Reconstructs the f-vector from `K` and `μ`.
pub fn f_vector_from_k_mu(k: u64, mu: Rational) -> Result<FVector, ActionError> {
    if k == 0 {
        return Err(ActionError::NoTetrahedra);
    }
    if *mu.numer() == 0 {
        return Err(ActionError::NonPositiveMu);
    }
    let n1 = Rational::from_integer(6 * k) / mu;
    if !n1.is_integer() || n1.to_integer() < k {
        return Err(ActionError::InvalidPair { k, mu });
    }
    let n1 = n1.to_integer();
    Ok(FVector::new((n1 - k) as usize, n1 as usize, 2 * k as usize, k as usize))
}

/// Spacing between adjacent normalized action levels at fixed `K`.
pub fn action_gap(k: u64, l: f64) -> f64 {
    3.0 * SQRT_2 / 4.0 / (l * l * k as f64)
}
