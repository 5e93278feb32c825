//! Sampled surfaces over the family's parameter domain, their interpolation
//! and CSV form.
//!
//! Grid node `(i, j)` sits at `(i/(nx−1), j/(ny−1))`. In `(x, y)` grids the
//! nodes with `x + y > 1` lie outside the simplex and hold `NaN`, written as
//! `NA` in CSV.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::states::SIMPLEX_TOL;

/// Significant digits used for every number written to CSV.
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parametrization {
    /// `(x, y)` with `x, y ≥ 0`, `x + y ≤ 1`.
    XySimplex,
    /// `(x, r)` on the unit square, `y = (1 − x) r`.
    XrSquare,
}

impl Parametrization {
    pub fn second_axis(self) -> &'static str {
        match self {
            Parametrization::XySimplex => "y",
            Parametrization::XrSquare => "r",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceGrid {
    pub nx: usize,
    pub ny: usize,
    pub parametrization: Parametrization,
    /// Row-major over `x`: `values[i * ny + j]`.
    pub values: Vec<f64>,
}

pub(crate) fn check_resolution(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::Resolution { min, got: n })
    } else {
        Ok(())
    }
}

/// `k / (n − 1)`, exact at both ends.
#[inline]
pub fn grid_coord(k: usize, n: usize) -> f64 {
    k as f64 / (n - 1) as f64
}

/// True if `(x, y)` lies in the simplex up to rounding.
#[inline]
pub fn in_simplex(x: f64, y: f64) -> bool {
    x >= -SIMPLEX_TOL && y >= -SIMPLEX_TOL && x + y <= 1.0 + SIMPLEX_TOL
}

impl SurfaceGrid {
    pub fn new(
        parametrization: Parametrization,
        nx: usize,
        ny: usize,
        values: Vec<f64>,
    ) -> Result<Self> {
        check_resolution(nx.min(ny), 2)?;
        if values.len() != nx * ny {
            return Err(Error::Dimension {
                expected: nx * ny,
                got: values.len(),
            });
        }
        Ok(Self {
            nx,
            ny,
            parametrization,
            values,
        })
    }

    /// Evaluates `f(first, second)` at every node; in `(x, y)` grids, nodes
    /// outside the simplex get `NaN` without calling `f`.
    pub fn from_fn<F>(parametrization: Parametrization, nx: usize, ny: usize, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Result<f64>,
    {
        let mut values = Vec::with_capacity(nx * ny);
        for i in 0..nx {
            let x = grid_coord(i, nx);
            for j in 0..ny {
                let s = grid_coord(j, ny);
                let v = match parametrization {
                    Parametrization::XySimplex if !in_simplex(x, s) => f64::NAN,
                    _ => f(x, s)?,
                };
                values.push(v);
            }
        }
        Self::new(parametrization, nx, ny, values)
    }

    pub fn x(&self, i: usize) -> f64 {
        grid_coord(i, self.nx)
    }

    pub fn second(&self, j: usize) -> f64 {
        grid_coord(j, self.ny)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ny + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.ny + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.ny..(i + 1) * self.ny]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.nx).map(|i| self.get(i, j)).collect()
    }

    /// Iterator over `(first, second, value)` for every node.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.nx).flat_map(move |i| (0..self.ny).map(move |j| (self.x(i), self.second(j), self.get(i, j))))
    }

    /// Largest `|a − b|` over nodes where both are finite.
    pub fn max_abs_diff(&self, other: &SurfaceGrid) -> f64 {
        assert_eq!((self.nx, self.ny), (other.nx, other.ny), "grid shape mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a.is_finite() && b.is_finite())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Interpolated value at `(u, v)` in the grid's own coordinates.
    ///
    /// Bilinear inside cells whose four corners are defined. Cells cut by the
    /// simplex hypotenuse fall back to linear interpolation on the lower-left
    /// triangle when the point lies in it. Returns `None` outside the domain.
    pub fn interpolate(&self, u: f64, v: f64) -> Option<f64> {
        if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&v) {
            return None;
        }
        if self.parametrization == Parametrization::XySimplex && !in_simplex(u, v) {
            return None;
        }
        let fu = u * (self.nx - 1) as f64;
        let fv = v * (self.ny - 1) as f64;
        let i = (fu.floor() as usize).min(self.nx - 2);
        let j = (fv.floor() as usize).min(self.ny - 2);
        let (a, b) = (fu - i as f64, fv - j as f64);
        let z00 = self.get(i, j);
        let z10 = self.get(i + 1, j);
        let z01 = self.get(i, j + 1);
        let z11 = self.get(i + 1, j + 1);
        if z00.is_finite() && z10.is_finite() && z01.is_finite() && z11.is_finite() {
            return Some(
                z00 * (1.0 - a) * (1.0 - b) + z10 * a * (1.0 - b) + z01 * (1.0 - a) * b + z11 * a * b,
            );
        }
        if a + b <= 1.0 + 1e-12 && z00.is_finite() && z10.is_finite() && z01.is_finite() {
            return Some(z00 + (z10 - z00) * a + (z01 - z00) * b);
        }
        // Hypotenuse cells on grids with nx ≠ ny: nearest defined corner.
        let corners = [(0.0, 0.0, z00), (1.0, 0.0, z10), (0.0, 1.0, z01), (1.0, 1.0, z11)];
        corners
            .iter()
            .filter(|c| c.2.is_finite())
            .min_by(|p, q| {
                let dp = (p.0 - a).powi(2) + (p.1 - b).powi(2);
                let dq = (q.0 - a).powi(2) + (q.1 - b).powi(2);
                dp.total_cmp(&dq)
            })
            .map(|c| c.2)
    }

    /// Writes `x,<y|r>,value` rows, x-major, `NA` for undefined nodes.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,{},value", self.parametrization.second_axis())?;
        for (x, s, v) in self.nodes() {
            writeln!(out, "{},{},{}", format_sig(x), format_sig(s), format_value(v))?;
        }
        out.flush()
    }

    /// Parses what [`SurfaceGrid::write_csv`] produces.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let io_err = |line: usize, e: std::io::Error| Error::Csv {
            line,
            reason: e.to_string(),
        };
        let (_, header) = lines.next().ok_or(Error::Csv {
            line: 1,
            reason: "empty file".into(),
        })?;
        let header = header.map_err(|e| io_err(1, e))?;
        let parametrization = match header.trim() {
            "x,y,value" => Parametrization::XySimplex,
            "x,r,value" => Parametrization::XrSquare,
            other => {
                return Err(Error::Csv {
                    line: 1,
                    reason: format!("unexpected header {other:?}"),
                })
            }
        };
        let mut xs: Vec<f64> = Vec::new();
        let mut values = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let line = line.map_err(|e| io_err(line_no, e))?;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::Csv {
                    line: line_no,
                    reason: format!("expected 3 fields, got {}", fields.len()),
                });
            }
            let parse = |s: &str| -> Result<f64> {
                if s == "NA" {
                    return Ok(f64::NAN);
                }
                s.parse::<f64>().map_err(|e| Error::Csv {
                    line: line_no,
                    reason: format!("{s:?}: {e}"),
                })
            };
            let x = parse(fields[0])?;
            if xs.last() != Some(&x) {
                xs.push(x);
            }
            values.push(parse(fields[2])?);
        }
        let nx = xs.len();
        if nx == 0 || values.len() % nx != 0 {
            return Err(Error::Csv {
                line: values.len() + 1,
                reason: "rows do not form a rectangular grid".into(),
            });
        }
        Self::new(parametrization, nx, values.len() / nx, values)
    }
}

/// `v` with [`CSV_DIGITS`] significant digits, `%g` style.
pub fn format_sig(v: f64) -> String {
    format_g(v, CSV_DIGITS)
}

/// Like [`format_sig`] but `NA` for non-finite values.
pub fn format_value(v: f64) -> String {
    if v.is_finite() {
        format_sig(v)
    } else {
        "NA".to_string()
    }
}

fn format_g(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", sig - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
