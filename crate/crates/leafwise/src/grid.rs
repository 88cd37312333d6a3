//! Discretized flat tori and scalar fields on them.
//!
//! A leaf is modelled as a flat torus in one or two dimensions, sampled on a
//! uniform periodic grid. All downstream machinery (Schrödinger spectra, heat
//! flows, stationary solves) consumes the second-order periodic Laplacian and
//! the quadrature inner product defined here. Flattening is row-major with
//! axis 0 slowest; every module shares that layout.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_POINTS_PER_AXIS: usize = 8;

/// Uniform periodic grid on a flat torus of dimension 1 or 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorusGrid {
    points: Vec<usize>,
    periods: Vec<f64>,
    /// period / points per axis, stored rather than recomputed.
    spacings: Vec<f64>,
}

impl TorusGrid {
    pub fn new(points: &[usize], periods: &[f64]) -> Result<Self> {
        if points.is_empty() || points.len() > 2 {
            return Err(Error::InvalidGrid(format!(
                "dimension must be 1 or 2, got {}",
                points.len()
            )));
        }
        if points.len() != periods.len() {
            return Err(Error::InvalidGrid(
                "points and periods must have the same length".into(),
            ));
        }
        for (&n, &l) in points.iter().zip(periods) {
            if n < MIN_POINTS_PER_AXIS {
                return Err(Error::InvalidGrid(format!(
                    "need at least {MIN_POINTS_PER_AXIS} points per axis, got {n}"
                )));
            }
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidGrid(format!("period must be positive, got {l}")));
            }
        }
        let spacings = points
            .iter()
            .zip(periods)
            .map(|(&n, &l)| l / n as f64)
            .collect();
        Ok(Self {
            points: points.to_vec(),
            periods: periods.to_vec(),
            spacings,
        })
    }

    pub fn line(n: usize, period: f64) -> Result<Self> {
        Self::new(&[n], &[period])
    }

    pub fn rect(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<Self> {
        Self::new(&[nx, ny], &[lx, ly])
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn periods(&self) -> &[f64] {
        &self.periods
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    /// Total number of sample points.
    pub fn len(&self) -> usize {
        self.points.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Volume of one grid cell (the quadrature weight).
    pub fn cell_volume(&self) -> f64 {
        self.spacings.iter().product()
    }

    /// Total volume of the torus.
    pub fn volume(&self) -> f64 {
        self.periods.iter().product()
    }

    /// Coordinates of the flat index (row-major, axis 0 slowest).
    pub fn coords(&self, idx: usize) -> [f64; 2] {
        let mut out = [0.0; 2];
        match self.dim() {
            1 => out[0] = idx as f64 * self.spacings[0],
            _ => {
                let ny = self.points[1];
                out[0] = (idx / ny) as f64 * self.spacings[0];
                out[1] = (idx % ny) as f64 * self.spacings[1];
            }
        }
        out
    }
}

/// Real scalar function sampled on a [`TorusGrid`].
///
/// Values are immutable after construction; transformation helpers return new
/// fields. This is the carrier for u, β, the Ψᵢ, the ground state and every
/// curvature scalar in the geometry layer.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: TorusGrid,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn from_values(grid: TorusGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidField(format!(
                "value count {} does not match grid point count {}",
                values.len(),
                grid.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidField(format!("non-finite sample {v}")));
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: TorusGrid, c: f64) -> Result<Self> {
        let n = grid.len();
        Self::from_values(grid, vec![c; n])
    }

    /// Sample `f` at the grid coordinates.
    pub fn from_fn(grid: TorusGrid, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        let values = (0..grid.len())
            .map(|i| {
                let xy = grid.coords(i);
                f(&xy[..grid.dim()])
            })
            .collect();
        Self::from_values(grid, values)
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// Pointwise map; the result lives on the same grid.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_values(self.grid.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_values(self.grid.clone(), values)
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        self.map(|v| c * v)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Second-order centered Laplacian with periodic wrap-around on every axis.
    pub fn laplacian(&self) -> ScalarField {
        let g = &self.grid;
        let v = &self.values;
        let mut out = vec![0.0; v.len()];
        match g.dim() {
            1 => {
                let n = g.points()[0];
                let inv_h2 = 1.0 / (g.spacings()[0] * g.spacings()[0]);
                for i in 0..n {
                    let l = if i == 0 { n - 1 } else { i - 1 };
                    let r = if i + 1 == n { 0 } else { i + 1 };
                    out[i] = (v[l] - 2.0 * v[i] + v[r]) * inv_h2;
                }
            }
            _ => {
                let (nx, ny) = (g.points()[0], g.points()[1]);
                let inv_hx2 = 1.0 / (g.spacings()[0] * g.spacings()[0]);
                let inv_hy2 = 1.0 / (g.spacings()[1] * g.spacings()[1]);
                for ix in 0..nx {
                    let xm = if ix == 0 { nx - 1 } else { ix - 1 };
                    let xp = if ix + 1 == nx { 0 } else { ix + 1 };
                    for iy in 0..ny {
                        let ym = if iy == 0 { ny - 1 } else { iy - 1 };
                        let yp = if iy + 1 == ny { 0 } else { iy + 1 };
                        let c = v[ix * ny + iy];
                        out[ix * ny + iy] = (v[xm * ny + iy] - 2.0 * c + v[xp * ny + iy]) * inv_hx2
                            + (v[ix * ny + ym] - 2.0 * c + v[ix * ny + yp]) * inv_hy2;
                    }
                }
            }
        }
        ScalarField {
            grid: g.clone(),
            values: out,
        }
    }

    /// L₂ inner product by the grid quadrature: Σ f·g · cell volume.
    pub fn inner_l2(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        let dot: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a * b)
            .sum();
        Ok(dot * self.grid.cell_volume())
    }

    pub fn norm_l2(&self) -> f64 {
        self.inner_l2(self).expect("same grid").sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_max(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &v in &self.values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }

    /// δ(f) = min f / max f, defined for strictly positive fields.
    pub fn delta_ratio(&self) -> Result<f64> {
        let (lo, hi) = self.min_max();
        if lo <= 0.0 {
            return Err(Error::NonPositiveField { min: lo });
        }
        Ok(lo / hi)
    }

    pub fn min(&self) -> f64 {
        self.min_max().0
    }

    pub fn max(&self) -> f64 {
        self.min_max().1
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.min() > 0.0
    }

    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (&a, &b)| m.max((a - b).abs())))
    }
}

/// JSON envelope for a field: `{grid: {dims, points, periods}, values: [...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct FieldEnvelope {
    pub grid: GridEnvelope,
    pub values: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GridEnvelope {
    pub dims: usize,
    pub points: Vec<usize>,
    pub periods: Vec<f64>,
}

impl ScalarField {
    pub fn to_envelope(&self) -> FieldEnvelope {
        FieldEnvelope {
            grid: GridEnvelope {
                dims: self.grid.dim(),
                points: self.grid.points().to_vec(),
                periods: self.grid.periods().to_vec(),
            },
            values: self.values.clone(),
        }
    }

    pub fn from_envelope(env: &FieldEnvelope) -> Result<Self> {
        if env.grid.dims != env.grid.points.len() {
            return Err(Error::InvalidGrid("dims disagrees with points".into()));
        }
        let grid = TorusGrid::new(&env.grid.points, &env.grid.periods)?;
        Self::from_values(grid, env.values.clone())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_envelope())?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let env: FieldEnvelope = serde_json::from_str(s)?;
        Self::from_envelope(&env)
    }

    /// CSV form: header `index,value`, one sample per line. The shortest
    /// round-tripping decimal is written, so read-back is bit-exact.
    pub fn to_csv<W: std::io::Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "index,value")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{i},{v:e}")?;
        }
        Ok(())
    }

    /// Reads values written by [`ScalarField::to_csv`]; the grid is supplied by the caller.
    pub fn from_csv<R: std::io::BufRead>(grid: TorusGrid, r: R) -> Result<Self> {
        let mut values = vec![f64::NAN; grid.len()];
        let mut seen = 0usize;
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("index")) {
                continue;
            }
            let (idx, val) = line.split_once(',').ok_or_else(|| {
                Error::InvalidField(format!("bad csv line {}: `{line}`", lineno + 1))
            })?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|e| Error::InvalidField(format!("bad index on line {}: {e}", lineno + 1)))?;
            let val: f64 = val
                .trim()
                .parse()
                .map_err(|e| Error::InvalidField(format!("bad value on line {}: {e}", lineno + 1)))?;
            if idx >= values.len() {
                return Err(Error::InvalidField(format!(
                    "index {idx} out of range for grid of {} points",
                    values.len()
                )));
            }
            values[idx] = val;
            seen += 1;
        }
        if seen != values.len() {
            return Err(Error::InvalidField(format!(
                "csv provided {seen} values for a grid of {} points",
                values.len()
            )));
        }
        Self::from_values(grid, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(n: usize) -> TorusGrid {
        TorusGrid::line(n, 2.0 * PI).unwrap()
    }

    #[test]
    fn grid_rejects_tiny_axes() {
        assert!(TorusGrid::line(4, 1.0).is_err());
        assert!(TorusGrid::new(&[8, 8, 8], &[1.0, 1.0, 1.0]).is_err());
        assert!(TorusGrid::line(8, -1.0).is_err());
    }

    #[test]
    fn spacing_is_stored_exactly() {
        let g = TorusGrid::line(10, 2.5).unwrap();
        assert_eq!(g.spacings()[0], 2.5 / 10.0);
        assert_eq!(g.len(), 10);
        let g2 = TorusGrid::rect(8, 16, 1.0, 2.0).unwrap();
        assert_eq!(g2.len(), 128);
        assert_eq!(g2.cell_volume(), (1.0 / 8.0) * (2.0 / 16.0));
    }

    #[test]
    fn field_rejects_non_finite_and_wrong_length() {
        let g = circle(8);
        assert!(ScalarField::from_values(g.clone(), vec![0.0; 7]).is_err());
        let mut v = vec![0.0; 8];
        v[3] = f64::NAN;
        assert!(ScalarField::from_values(g, v).is_err());
    }

    #[test]
    fn laplacian_of_constant_is_zero() {
        let f = ScalarField::constant(circle(32), 4.2).unwrap();
        assert_eq!(f.laplacian().sup_norm(), 0.0);
        let f2 = ScalarField::constant(TorusGrid::rect(8, 8, 1.0, 3.0).unwrap(), -0.7).unwrap();
        assert_eq!(f2.laplacian().sup_norm(), 0.0);
    }

    #[test]
    fn laplacian_of_cosine_matches_analytic() {
        let g = circle(256);
        let f = ScalarField::from_fn(g, |x| x[0].cos()).unwrap();
        let lap = f.laplacian();
        let exact = f.scale(-1.0).unwrap();
        assert!(lap.sup_distance(&exact).unwrap() < 1e-3);
    }

    #[test]
    fn laplacian_2d_matches_analytic() {
        let g = TorusGrid::rect(64, 64, 2.0 * PI, 2.0 * PI).unwrap();
        let f = ScalarField::from_fn(g.clone(), |x| x[0].sin() + x[1].sin()).unwrap();
        let lap = f.laplacian();
        let exact = ScalarField::from_fn(g, |x| -(x[0].sin() + x[1].sin())).unwrap();
        let h2 = (2.0 * PI / 64.0) * (2.0 * PI / 64.0);
        assert!(lap.sup_distance(&exact).unwrap() < h2);
    }

    #[test]
    fn laplacian_is_second_order() {
        let errs: Vec<f64> = [64usize, 128, 256]
            .iter()
            .map(|&n| {
                let g = circle(n);
                let f = ScalarField::from_fn(g, |x| (2.0 * x[0]).sin()).unwrap();
                let exact = f.scale(-4.0).unwrap();
                f.laplacian().sup_distance(&exact).unwrap()
            })
            .collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((3.5..=4.5).contains(&ratio), "convergence ratio {ratio}");
        }
    }

    #[test]
    fn laplacian_sums_to_zero_and_is_self_adjoint() {
        let g = circle(128);
        let f = ScalarField::from_fn(g.clone(), |x| (x[0].sin() + 0.3 * (3.0 * x[0]).cos()).exp()).unwrap();
        let gfun = ScalarField::from_fn(g, |x| 1.0 / (2.0 + x[0].cos())).unwrap();
        let lap = f.laplacian();
        let total: f64 = lap.values().iter().sum();
        assert!(total.abs() < 1e-10 * f.sup_norm() * 128.0);
        let lhs = lap.inner_l2(&gfun).unwrap();
        let rhs = f.inner_l2(&gfun.laplacian()).unwrap();
        assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(rhs.abs()).max(1.0));
    }

    #[test]
    fn laplacian_is_linear() {
        let g = circle(64);
        let f = ScalarField::from_fn(g.clone(), |x| x[0].sin()).unwrap();
        let h = ScalarField::from_fn(g, |x| (2.0 * x[0]).cos()).unwrap();
        let combo = f.scale(2.25).unwrap().add(&h.scale(-0.5).unwrap()).unwrap();
        let lhs = combo.laplacian();
        let rhs = f
            .laplacian()
            .scale(2.25)
            .unwrap()
            .add(&h.laplacian().scale(-0.5).unwrap())
            .unwrap();
        let scale = lhs.sup_norm().max(1.0);
        assert!(lhs.sup_distance(&rhs).unwrap() <= 1e-12 * scale);
    }

    #[test]
    fn inner_product_basics() {
        let g = circle(256);
        let one = ScalarField::constant(g.clone(), 1.0).unwrap();
        assert!((one.inner_l2(&one).unwrap() - 2.0 * PI).abs() < 1e-12);
        let s = ScalarField::from_fn(g.clone(), |x| x[0].sin()).unwrap();
        let c = ScalarField::from_fn(g, |x| x[0].cos()).unwrap();
        assert!(s.inner_l2(&c).unwrap().abs() < 1e-12);
        assert!((s.inner_l2(&s).unwrap() - PI).abs() < 1e-10);
    }

    #[test]
    fn inner_product_rejects_grid_mismatch() {
        let a = ScalarField::constant(circle(16), 1.0).unwrap();
        let b = ScalarField::constant(circle(32), 1.0).unwrap();
        assert!(matches!(a.inner_l2(&b), Err(Error::GridMismatch)));
    }

    #[test]
    fn delta_ratio_cases() {
        let g = circle(8);
        let c = ScalarField::constant(g.clone(), 5.0).unwrap();
        assert_eq!(c.delta_ratio().unwrap(), 1.0);
        let f = ScalarField::from_values(g.clone(), vec![1.0, 2.0, 4.0, 2.0, 1.0, 2.0, 4.0, 2.0]).unwrap();
        assert_eq!(f.delta_ratio().unwrap(), 0.25);
        let bad = ScalarField::from_values(g, vec![1.0, -0.5, 4.0, 2.0, 1.0, 2.0, 4.0, 2.0]).unwrap();
        assert!(bad.delta_ratio().is_err());
    }

    #[test]
    fn delta_ratio_of_shifted_sine() {
        let g = circle(256);
        let f = ScalarField::from_fn(g, |x| 2.0 + x[0].sin()).unwrap();
        assert!((f.delta_ratio().unwrap() - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let g = circle(16);
        let f = ScalarField::from_fn(g.clone(), |x| x[0].sin() + 2.0).unwrap();
        let mut buf = Vec::new();
        f.to_csv(&mut buf).unwrap();
        let back = ScalarField::from_csv(g, std::io::BufReader::new(&buf[..])).unwrap();
        assert_eq!(f, back);

        let js = f.to_json().unwrap();
        let back2 = ScalarField::from_json(&js).unwrap();
        assert_eq!(f, back2);
    }
}
