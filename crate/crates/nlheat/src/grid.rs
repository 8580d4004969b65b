//! Cell-centered tensor grids on a truncated box, sampled fields, and
//! (weighted) Lebesgue norms by cell quadrature.
//!
//! The grid covers `[-R, R]^N` with `n` cells per axis; nodes sit at cell
//! centers, so no node ever coincides with the origin and singular data
//! stay finite. Nodes are computed as `h·(i - (n-1)/2)`, which makes the
//! grid bit-exactly symmetric under reflection — odd extensions stay odd
//! to the last ulp.

use crate::profiles::{Profile, ProfileError};
use crate::quad::{GL8_NODES, GL8_WEIGHTS};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid dimension must be 1, 2 or 3 (got {0})")]
    UnsupportedDimension(usize),
    #[error("points per axis must be even (got {0})")]
    OddPointCount(usize),
    #[error("points per axis must be at least 16 (got {0})")]
    TooFewPoints(usize),
    #[error("half width must be positive (got {0})")]
    NonPositiveHalfWidth(f64),
    #[error("cell average of |x|^-{gamma} diverges for gamma >= N = {dim}")]
    NonIntegrableSingularity { gamma: f64, dim: usize },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Cell-centered grid on `[-half_width, half_width]^dimension`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dimension: usize,
    half_width: f64,
    points_per_axis: usize,
}

/// Alias for [`Grid::new`], matching the construction verb used by the CLI.
pub fn make_grid(dimension: usize, half_width: f64, points_per_axis: usize) -> Result<Grid, GridError> {
    Grid::new(dimension, half_width, points_per_axis)
}

impl Grid {
    pub fn new(dimension: usize, half_width: f64, points_per_axis: usize) -> Result<Self, GridError> {
        if !(1..=3).contains(&dimension) {
            return Err(GridError::UnsupportedDimension(dimension));
        }
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(GridError::NonPositiveHalfWidth(half_width));
        }
        if points_per_axis % 2 != 0 {
            return Err(GridError::OddPointCount(points_per_axis));
        }
        if points_per_axis < 16 {
            return Err(GridError::TooFewPoints(points_per_axis));
        }
        Ok(Grid { dimension, half_width, points_per_axis })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    /// Cell width `h = 2R/n`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points_per_axis as f64
    }

    /// Total number of cells `n^N`.
    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.dimension as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell volume `h^N`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dimension as i32)
    }

    /// Coordinate of the i-th node along one axis, exactly antisymmetric:
    /// `axis_node(n-1-i) == -axis_node(i)` holds bitwise.
    pub fn axis_node(&self, i: usize) -> f64 {
        let n = self.points_per_axis as f64;
        self.spacing() * (i as f64 - 0.5 * (n - 1.0))
    }

    /// Decode a flat index into per-axis indices (row-major, axis 0 slowest).
    pub fn multi_index(&self, flat: usize) -> [usize; 3] {
        let n = self.points_per_axis;
        let mut idx = [0usize; 3];
        let mut rem = flat;
        for d in (0..self.dimension).rev() {
            idx[d] = rem % n;
            rem /= n;
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        let n = self.points_per_axis;
        let mut flat = 0usize;
        for d in 0..self.dimension {
            flat = flat * n + idx[d];
        }
        flat
    }

    /// Node position of a flat cell index.
    pub fn node(&self, flat: usize) -> [f64; 3] {
        let idx = self.multi_index(flat);
        let mut x = [0.0f64; 3];
        for d in 0..self.dimension {
            x[d] = self.axis_node(idx[d]);
        }
        x
    }

    pub fn node_radius(&self, flat: usize) -> f64 {
        let x = self.node(flat);
        radius(&x[..self.dimension])
    }

    /// Cell average of `|x|^gamma` over the cell with the given flat index,
    /// by tensor 8-point Gauss–Legendre. Used for weight averaging near the
    /// origin; `gamma >= 0` there, so the integrand is continuous.
    pub fn cell_average_radial_power(&self, flat: usize, gamma: f64) -> f64 {
        let center = self.node(flat);
        let h = self.spacing();
        let half = 0.5 * h;
        match self.dimension {
            1 => {
                // closed form: cells never straddle the origin
                let a = (center[0] - half).abs().min((center[0] + half).abs());
                let b = (center[0] - half).abs().max((center[0] + half).abs());
                if gamma == 0.0 {
                    1.0
                } else {
                    (b.powf(gamma + 1.0) - a.powf(gamma + 1.0)) / ((gamma + 1.0) * h)
                }
            }
            2 => {
                let mut acc = 0.0;
                for (u, wu) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
                    for (v, wv) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
                        let x = center[0] + half * u;
                        let y = center[1] + half * v;
                        acc += wu * wv * (x * x + y * y).sqrt().powf(gamma);
                    }
                }
                acc / 4.0
            }
            3 => {
                let mut acc = 0.0;
                for (u, wu) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
                    for (v, wv) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
                        for (w, ww) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
                            let x = center[0] + half * u;
                            let y = center[1] + half * v;
                            let z = center[2] + half * w;
                            acc += wu * wv * ww * (x * x + y * y + z * z).sqrt().powf(gamma);
                        }
                    }
                }
                acc / 8.0
            }
            _ => unreachable!(),
        }
    }

    /// Flat indices of the 2^N cells whose closure touches the origin.
    pub fn origin_cells(&self) -> Vec<usize> {
        let n = self.points_per_axis;
        let lo = n / 2 - 1;
        let hi = n / 2;
        let choices = [lo, hi];
        let mut out = Vec::new();
        match self.dimension {
            1 => {
                for &i in &choices {
                    out.push(self.flat_index(&[i]));
                }
            }
            2 => {
                for &i in &choices {
                    for &j in &choices {
                        out.push(self.flat_index(&[i, j]));
                    }
                }
            }
            3 => {
                for &i in &choices {
                    for &j in &choices {
                        for &k in &choices {
                            out.push(self.flat_index(&[i, j, k]));
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }
}

pub fn radius(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Sampled function on a grid; the discrete representative of `u(t,·)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Grid,
    values: Vec<f64>,
    antisymmetry_axes: usize,
}

impl Field {
    /// Wrap raw values. Rejects non-finite entries: a non-finite value is a
    /// detected blow-up, never silently stored.
    pub fn new(grid: Grid, values: Vec<f64>, antisymmetry_axes: usize) -> Self {
        assert_eq!(values.len(), grid.len(), "value count must match grid");
        assert!(
            values.iter().all(|v| v.is_finite()),
            "field values must be finite"
        );
        assert!(antisymmetry_axes <= grid.dimension());
        Field { grid, values, antisymmetry_axes }
    }

    pub fn zeros(grid: Grid) -> Self {
        Field { grid, values: vec![0.0; grid.len()], antisymmetry_axes: 0 }
    }

    pub fn constant(grid: Grid, c: f64) -> Self {
        assert!(c.is_finite());
        Field { grid, values: vec![c; grid.len()], antisymmetry_axes: 0 }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn antisymmetry_axes(&self) -> usize {
        self.antisymmetry_axes
    }

    pub fn set_antisymmetry_axes(&mut self, m: usize) {
        assert!(m <= self.grid.dimension());
        self.antisymmetry_axes = m;
    }

    pub fn scale(&mut self, c: f64) {
        for v in &mut self.values {
            *v *= c;
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Worst per-axis deviation from odd symmetry over the first `m` axes,
    /// relative to the sup norm.
    pub fn antisymmetry_defect(&self, m: usize) -> f64 {
        let n = self.grid.points_per_axis();
        let sup = self.sup_norm();
        if sup == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for axis in 0..m {
            for flat in 0..self.values.len() {
                let mirror = self.reflect_axis(flat, axis, n);
                let d = (self.values[flat] + self.values[mirror]).abs();
                worst = worst.max(d);
            }
        }
        worst / sup
    }

    fn reflect_axis(&self, flat: usize, axis: usize, n: usize) -> usize {
        let mut idx = self.grid.multi_index(flat);
        idx[axis] = n - 1 - idx[axis];
        self.grid.flat_index(&idx[..self.grid.dimension()])
    }

    /// Force exact odd symmetry in each of the first `m` axes by projecting
    /// axis by axis (the projections commute). Idempotent; sets the marker.
    pub fn antisymmetrize(&mut self, m: usize) {
        let n = self.grid.points_per_axis();
        for axis in 0..m {
            for flat in 0..self.values.len() {
                let mirror = self.reflect_axis(flat, axis, n);
                if mirror > flat {
                    let v = 0.5 * (self.values[flat] - self.values[mirror]);
                    self.values[flat] = v;
                    self.values[mirror] = -v;
                }
            }
        }
        self.antisymmetry_axes = self.antisymmetry_axes.max(m);
    }

    /// Discrete integral `Σ u_c h^N`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_volume()
    }
}

/// Exponent/weight pair for the weighted Lebesgue norm `‖|·|^γ f‖_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSpec {
    q: f64,
    gamma: f64,
}

impl NormSpec {
    /// `q` may be `f64::INFINITY`; `gamma = 0` gives the plain `L^q` norm.
    pub fn new(q: f64, gamma: f64) -> Self {
        assert!(q >= 1.0, "norm exponent must satisfy q >= 1");
        assert!(gamma >= 0.0, "weight power must be nonnegative");
        NormSpec { q, gamma }
    }

    pub fn sup() -> Self {
        NormSpec { q: f64::INFINITY, gamma: 0.0 }
    }

    pub fn lp(q: f64) -> Self {
        Self::new(q, 0.0)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Weighted Lebesgue norm of a sampled field.
///
/// Cells within `2h` of the origin use the cell-averaged weight, all others
/// the point weight; for `q = ∞` the weighted max over cells is returned.
pub fn norm(field: &Field, spec: &NormSpec) -> f64 {
    let grid = field.grid();
    let gamma = spec.gamma;
    let weight = |flat: usize| -> f64 {
        if gamma == 0.0 {
            1.0
        } else {
            let r = grid.node_radius(flat);
            if r <= 2.0 * grid.spacing() {
                grid.cell_average_radial_power(flat, gamma)
            } else {
                r.powf(gamma)
            }
        }
    };
    if spec.q.is_infinite() {
        let mut m = 0.0f64;
        for (flat, v) in field.values().iter().enumerate() {
            if gamma == 0.0 {
                m = m.max(v.abs());
            } else {
                m = m.max(weight(flat) * v.abs());
            }
        }
        m
    } else {
        let q = spec.q;
        let mut acc = 0.0f64;
        for (flat, v) in field.values().iter().enumerate() {
            let w = weight(flat);
            acc += (w * v.abs()).powf(q);
        }
        (acc * grid.cell_volume()).powf(1.0 / q)
    }
}

/// Realize a symbolic profile on a grid.
///
/// Point evaluation everywhere except: profiles singular at the origin get
/// a cell-averaged value (32 quadrature points per axis) on the cells
/// touching the origin; sector profiles are sampled pointwise (their odd
/// pairing is the regularization and per-cell averages diverge).
pub fn sample_profile(profile: &Profile, grid: &Grid) -> Result<Field, GridError> {
    let dim = grid.dimension();
    if let Some(gamma) = profile.integrable_singularity_order() {
        if gamma >= dim as f64 {
            return Err(GridError::NonIntegrableSingularity { gamma, dim });
        }
    }
    let mut values = vec![0.0f64; grid.len()];
    for (flat, slot) in values.iter_mut().enumerate() {
        let x = grid.node(flat);
        *slot = profile.evaluate(&x[..dim])?;
    }
    if profile.integrable_singularity_order().is_some() {
        for flat in grid.origin_cells() {
            values[flat] = cell_average_profile(profile, grid, flat)?;
        }
    }
    let m = profile.antisymmetry_axes();
    let mut field = Field::new(*grid, values, m);
    if m > 0 {
        field.antisymmetrize(m);
    }
    Ok(field)
}

fn cell_average_profile(profile: &Profile, grid: &Grid, flat: usize) -> Result<f64, GridError> {
    const PTS: usize = 32;
    let dim = grid.dimension();
    let h = grid.spacing();
    let center = grid.node(flat);
    let sub = h / PTS as f64;
    let coord = |d: usize, k: usize| center[d] - 0.5 * h + (k as f64 + 0.5) * sub;
    let mut acc = 0.0f64;
    match dim {
        1 => {
            // exact handling of the |y|^{-s} factor: substitute it out
            let s = profile.integrable_singularity_order().unwrap_or(0.0);
            let negative_side = center[0] < 0.0;
            let g = |y: f64| {
                let y = y.max(1e-300);
                let x = if negative_side { -y } else { y };
                profile.evaluate(&[x]).unwrap_or(0.0) * y.powf(s)
            };
            let integral = crate::quad::integrate_power_singularity(&g, s, h, 1e-12);
            Ok(integral / h)
        }
        2 => {
            for i in 0..PTS {
                for j in 0..PTS {
                    acc += profile.evaluate(&[coord(0, i), coord(1, j)])?;
                }
            }
            Ok(acc / (PTS * PTS) as f64)
        }
        3 => {
            for i in 0..PTS {
                for j in 0..PTS {
                    for k in 0..PTS {
                        acc += profile.evaluate(&[coord(0, i), coord(1, j), coord(2, k)])?;
                    }
                }
            }
            Ok(acc / (PTS * PTS * PTS) as f64)
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::{AngularPart, Profile};
    use approx::assert_relative_eq;

    #[test]
    fn grid_arithmetic_matches_cell_centering() {
        let g = Grid::new(1, 10.0, 20).unwrap();
        assert_relative_eq!(g.spacing(), 1.0);
        assert_relative_eq!(g.axis_node(0), -9.5);
        let g2 = Grid::new(2, 5.0, 16).unwrap();
        assert_eq!(g2.len(), 256);
        assert_relative_eq!(g2.spacing(), 0.625);
    }

    #[test]
    fn grid_rejects_bad_parameters() {
        assert_eq!(Grid::new(1, 10.0, 21).unwrap_err(), GridError::OddPointCount(21));
        assert!(matches!(Grid::new(4, 1.0, 16), Err(GridError::UnsupportedDimension(4))));
        assert!(matches!(Grid::new(1, -1.0, 16), Err(GridError::NonPositiveHalfWidth(_))));
        assert!(matches!(Grid::new(1, 1.0, 8), Err(GridError::TooFewPoints(8))));
    }

    #[test]
    fn nodes_are_exactly_reflection_symmetric() {
        let g = Grid::new(1, 7.3, 64).unwrap();
        for i in 0..64 {
            assert_eq!(g.axis_node(63 - i).to_bits(), (-g.axis_node(i)).to_bits());
        }
    }

    #[test]
    fn constant_profile_samples_to_constant() {
        let g = Grid::new(2, 5.0, 16).unwrap();
        let f = sample_profile(&Profile::constant(1.0), &g).unwrap();
        assert!(f.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn non_integrable_singularity_is_rejected() {
        let g = Grid::new(1, 5.0, 32).unwrap();
        let p = Profile::truncated_singular(1.0, AngularPart::ConstantOne, 1.0);
        assert!(matches!(
            sample_profile(&p, &g),
            Err(GridError::NonIntegrableSingularity { .. })
        ));
    }

    #[test]
    fn origin_cell_uses_cell_average_of_singular_profile() {
        // h = 0.01 grid; cell average of |x|^{-1/2} over (0, h) is
        // 2·h^{-1/2}·h/h = 2/sqrt(h), larger than the point value (h/2)^{-1/2}.
        let g = Grid::new(1, 5.0, 1000).unwrap();
        let h = g.spacing();
        let p = Profile::truncated_singular(0.5, AngularPart::ConstantOne, 1.0);
        let f = sample_profile(&p, &g).unwrap();
        let flat = g.origin_cells()[1];
        let point = g.node_radius(flat).powf(-0.5);
        let oracle = 2.0 * h.sqrt() / h; // ∫_0^h y^{-1/2} dy / h
        assert!(f.values()[flat] > point);
        assert_relative_eq!(f.values()[flat], oracle, max_relative = 1e-3);
    }

    #[test]
    fn weighted_norm_of_unit_interval_indicator() {
        // ‖|x|·1_{[0,1]}‖_2 = (∫₀¹ x²)^{1/2} = 1/sqrt(3)
        let g = Grid::new(1, 2.0, 400).unwrap();
        let mut vals = vec![0.0; g.len()];
        for (i, v) in vals.iter_mut().enumerate() {
            let x = g.axis_node(i);
            if (0.0..=1.0).contains(&x) {
                *v = 1.0;
            }
        }
        let f = Field::new(g, vals, 0);
        let v = norm(&f, &NormSpec::new(2.0, 1.0));
        assert_relative_eq!(v, (1.0f64 / 3.0).sqrt(), epsilon = g.spacing());
    }

    #[test]
    fn sup_norm_is_exact_max() {
        let g = Grid::new(1, 2.0, 32).unwrap();
        let mut vals = vec![0.25; g.len()];
        vals[7] = -3.5;
        let f = Field::new(g, vals, 0);
        assert_eq!(norm(&f, &NormSpec::sup()), 3.5);
    }

    #[test]
    fn gaussian_mass_is_close_to_one() {
        let g = Grid::new(1, 12.0, 512).unwrap();
        let p = Profile::dirac_approx(1.0, 1.0); // G_1
        let f = sample_profile(&p, &g).unwrap();
        let v = norm(&f, &NormSpec::lp(1.0));
        assert_relative_eq!(v, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn norm_is_monotone_in_the_pointwise_order() {
        let g = Grid::new(1, 3.0, 64).unwrap();
        let u = sample_profile(&Profile::bounded_bump(1.0, 1.0), &g).unwrap();
        let mut v = u.clone();
        for x in v.values_mut() {
            *x *= 1.5;
        }
        for spec in [NormSpec::sup(), NormSpec::lp(1.0), NormSpec::new(3.0, 0.5)] {
            assert!(norm(&u, &spec) <= norm(&v, &spec));
        }
    }
}
