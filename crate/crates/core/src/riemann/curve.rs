use std::io::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// Point of the group in global coordinates `x_0..x_n, z_1..z_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupPoint {
    x: Vec<f64>,
    z: Vec<f64>,
}

impl GroupPoint {
    pub fn new(x: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        if x.len() != z.len() + 1 || z.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: z.len() + 1,
                found: x.len(),
            });
        }
        Ok(Self { x, z })
    }

    pub fn origin(n: usize) -> Self {
        Self {
            x: vec![0.0; n + 1],
            z: vec![0.0; n],
        }
    }

    pub fn from_coords(coords: &[f64], n: usize) -> Result<Self> {
        if coords.len() != 2 * n + 1 {
            return Err(Error::DimensionMismatch {
                expected: 2 * n + 1,
                found: coords.len(),
            });
        }
        Self::new(coords[..=n].to_vec(), coords[n + 1..].to_vec())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    /// `z_0 = -(z_1 + ... + z_n)`.
    pub fn z0(&self) -> f64 {
        -self.z.iter().sum::<f64>()
    }

    /// `z_i` for `0 <= i <= n`, with `z_0` derived.
    #[inline]
    pub fn z_full(&self, i: usize) -> f64 {
        if i == 0 {
            self.z0()
        } else {
            self.z[i - 1]
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        self.x.iter().chain(&self.z).copied().collect()
    }

    /// Group product `self * other`: `x = e^{z_i} x'_i + x_i`, `z = z + z'`.
    pub fn mul(&self, other: &GroupPoint) -> GroupPoint {
        let x = (0..=self.n())
            .map(|i| self.z_full(i).exp() * other.x[i] + self.x[i])
            .collect();
        let z = self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect();
        GroupPoint { x, z }
    }

    /// Pushes a tangent vector (in coordinates) at any point through the
    /// differential of left multiplication by `self`.
    pub fn push_tangent(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n();
        v.iter()
            .enumerate()
            .map(|(idx, &c)| if idx <= n { self.z_full(idx).exp() * c } else { c })
            .collect()
    }
}

/// A sampled curve with coordinate velocities, and accelerations when they
/// are known in closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSample {
    pub n: usize,
    pub t: Vec<f64>,
    pub points: Vec<GroupPoint>,
    pub velocities: Vec<Vec<f64>>,
    pub accelerations: Option<Vec<Vec<f64>>>,
}

impl CurveSample {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Largest coordinate deviation between two curves sampled on the same
    /// grid.
    pub fn sup_deviation(&self, other: &CurveSample) -> Result<f64> {
        if self.t.len() != other.t.len() || self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.t.len(),
                found: other.t.len(),
            });
        }
        Ok(self
            .points
            .iter()
            .zip(&other.points)
            .flat_map(|(p, q)| {
                p.coords()
                    .into_iter()
                    .zip(q.coords())
                    .map(|(a, b)| (a - b).abs())
                    .collect::<Vec<_>>()
            })
            .fold(0.0, f64::max))
    }

    /// Image of the curve under left multiplication by `h`.
    pub fn left_translate(&self, h: &GroupPoint) -> CurveSample {
        CurveSample {
            n: self.n,
            t: self.t.clone(),
            points: self.points.iter().map(|p| h.mul(p)).collect(),
            velocities: self.velocities.iter().map(|v| h.push_tangent(v)).collect(),
            accelerations: self
                .accelerations
                .as_ref()
                .map(|acc| acc.iter().map(|a| h.push_tangent(a)).collect()),
        }
    }
}

/// Column names of the curve CSV format.
pub fn curve_csv_header(n: usize) -> Vec<String> {
    let mut cols = vec!["t".to_string()];
    cols.extend((0..=n).map(|i| format!("x_{i}")));
    cols.extend((1..=n).map(|k| format!("z_{k}")));
    cols.extend((0..=n).map(|i| format!("vx_{i}")));
    cols.extend((1..=n).map(|k| format!("vz_{k}")));
    cols
}

/// One CSV row per node: `t, x_0..x_n, z_1..z_n, vx_0..vx_n, vz_1..vz_n`.
pub fn curve_csv_rows(curve: &CurveSample) -> Vec<Vec<f64>> {
    curve
        .t
        .iter()
        .zip(&curve.points)
        .zip(&curve.velocities)
        .map(|((&t, p), v)| {
            let mut row = vec![t];
            row.extend(p.coords());
            row.extend(v.iter().copied());
            row
        })
        .collect()
}

pub fn write_curve_csv<W: Write>(curve: &CurveSample, mut w: W) -> io::Result<()> {
    writeln!(w, "{}", curve_csv_header(curve.n).join(","))?;
    for row in curve_csv_rows(curve) {
        let line: Vec<String> = row.iter().map(f64::to_string).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

/// Reads the curve CSV format back; accelerations are not stored.
pub fn read_curve_csv(text: &str) -> Result<CurveSample> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let cols = header.split(',').count();
    if cols < 4 || (cols - 1) % 2 != 0 || (cols - 1) / 2 % 2 != 1 {
        return Err(Error::Parse {
            line: 1,
            message: format!("unexpected column count {cols}"),
        });
    }
    let dim = (cols - 1) / 2;
    let n = (dim - 1) / 2;
    if header.split(',').map(str::trim).ne(curve_csv_header(n).iter().map(String::as_str)) {
        return Err(Error::Parse {
            line: 1,
            message: "header does not match the curve format".into(),
        });
    }
    let mut curve = CurveSample {
        n,
        t: Vec::new(),
        points: Vec::new(),
        velocities: Vec::new(),
        accelerations: None,
    };
    for (idx, line) in lines {
        let values = line
            .split(',')
            .map(|s| {
                s.trim().parse::<f64>().map_err(|e| Error::Parse {
                    line: idx + 1,
                    message: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != cols {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected {cols} fields, found {}", values.len()),
            });
        }
        curve.t.push(values[0]);
        curve.points.push(GroupPoint::from_coords(&values[1..=dim], n)?);
        curve.velocities.push(values[dim + 1..].to_vec());
    }
    Ok(curve)
}
