use crate::error::{check_cap, Error, Result};

/// Largest number of grid cells.
pub const CELL_CAP: usize = 1 << 22;

/// The grid `Π_j [k_j/g, (k_j+1)/g)` on `[0,1)^dims`, cells indexed
/// big-endian in base `g` over the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPartition {
    pub resolution: usize,
    pub dims: usize,
}

pub fn build_grid_partition(g: usize, dims: usize) -> Result<TorusPartition> {
    if g == 0 || dims == 0 {
        return Err(Error::Invalid("grid resolution and dimension must be positive".into()));
    }
    let cells = (g as u128).checked_pow(dims as u32).unwrap_or(u128::MAX);
    check_cap("grid cells", cells, CELL_CAP as u128)?;
    Ok(TorusPartition { resolution: g, dims })
}

impl TorusPartition {
    pub fn cell_count(&self) -> usize {
        self.resolution.pow(self.dims as u32)
    }

    /// Arc index of the cell in every coordinate.
    pub fn coords(&self, cell: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims];
        let mut rest = cell;
        for slot in out.iter_mut().rev() {
            *slot = rest % self.resolution;
            rest /= self.resolution;
        }
        out
    }

    pub fn cell_index(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &k| acc * self.resolution + k)
    }

    /// Width `1/g` of a cell in each coordinate.
    pub fn width(&self) -> f64 {
        1.0 / self.resolution as f64
    }

    /// Euclidean diameter `√dims / g` of a box.
    pub fn diameter(&self) -> f64 {
        (self.dims as f64).sqrt() / self.resolution as f64
    }

    /// The cell's center.
    pub fn representative(&self, cell: usize) -> Vec<f64> {
        self.coords(cell)
            .into_iter()
            .map(|k| (k as f64 + 0.5) / self.resolution as f64)
            .collect()
    }

    /// The cell containing a point of `[0,1)^dims`.
    pub fn cell_of(&self, point: &[f64]) -> usize {
        let coords: Vec<usize> = point
            .iter()
            .map(|&x| ((x.rem_euclid(1.0) * self.resolution as f64).floor() as usize).min(self.resolution - 1))
            .collect();
        self.cell_index(&coords)
    }

    pub fn contains(&self, cell: usize, point: &[f64]) -> bool {
        let g = self.resolution as f64;
        self.coords(cell)
            .iter()
            .zip(point)
            .all(|(&k, &x)| (k as f64) / g <= x && x < (k as f64 + 1.0) / g)
    }
}
