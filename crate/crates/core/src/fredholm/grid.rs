use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::GaussLegendre;

/// Scale of the tangent map used for the Airy kernel.
pub const TANGENT_SCALE: f64 = 10.0;
pub const MIN_NODES: usize = 20;
pub const MAX_NODES: usize = 400;
pub const DEFAULT_NODES: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MapKind {
    /// x = s + L tan(π(ξ+1)/4) onto (s, ∞).
    Tangent { scale: f64 },
    /// Affine map onto the finite panel (s, s + length).
    Panel { length: f64 },
}

/// Quadrature nodes and weights discretizing (s, ∞) or a truncation of it.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureGrid {
    pub s: f64,
    pub m: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub map_kind: MapKind,
}

fn check_nodes(m: usize) -> Result<()> {
    if (MIN_NODES..=MAX_NODES).contains(&m) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "node count {m} outside [{MIN_NODES}, {MAX_NODES}]"
        )))
    }
}

/// Gauss–Legendre nodes pushed onto (s, ∞) by the tangent map.
pub fn build_grid(s: f64, m: usize) -> Result<QuadratureGrid> {
    check_nodes(m)?;
    let rule = GaussLegendre::get(m);
    let l = TANGENT_SCALE;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (&xi, &w) in rule.nodes.iter().zip(&rule.weights) {
        let theta = PI * (xi + 1.0) / 4.0;
        let c = theta.cos();
        nodes.push(s + l * theta.tan());
        weights.push(w * l * PI / 4.0 / (c * c));
    }
    Ok(QuadratureGrid {
        s,
        m,
        nodes,
        weights,
        map_kind: MapKind::Tangent { scale: l },
    })
}

/// Gauss–Legendre nodes on the finite panel (s, s + length).
pub fn build_panel_grid(s: f64, length: f64, m: usize) -> Result<QuadratureGrid> {
    check_nodes(m)?;
    if !(length > 0.0) {
        return Err(Error::Parameter(format!("panel length {length} must be positive")));
    }
    let rule = GaussLegendre::get(m);
    let (nodes, weights) = rule.mapped(s, s + length).unzip();
    Ok(QuadratureGrid {
        s,
        m,
        nodes,
        weights,
        map_kind: MapKind::Panel { length },
    })
}
