//! Figure data and catenoid meshes.

use std::io::{self, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::catenoid::{area_deficit, gomes_rho, sample_catenary};
use crate::error::{domain, Result};
use crate::quadrature::Tolerance;
use crate::scalar::Real;

/// Significant digits written to CSV.
pub const CSV_DIGITS: usize = 12;

/// Generator of a [`MeshData`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshParams<T> {
    pub a: T,
    pub y_max: T,
    pub n_profile: usize,
    pub n_angle: usize,
}

/// Triangulated catenoid in the Poincaré ball.
///
/// Vertices are stored row by row: row `i` holds `n_angle` points at the
/// `i`-th profile sample, profile running from one end through the neck to
/// the other. The rotation axis is the `u`-axis and the symmetry plane is
/// `u = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshData<T> {
    pub vertices: Vec<[T; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub generator: MeshParams<T>,
    /// Profile coordinates `(x, y)` of each row.
    pub profile: Vec<(T, T)>,
}

/// Upper half-space to ball: `(z, t) -> (|X|^2 - 1, 2 Re z, 2 Im z) / (|z|^2 + (t+1)^2)`.
///
/// Sends `(0, 1)` to the origin, the vertical axis to the `u`-axis and the
/// unit hemisphere to `u = 0`.
pub fn half_space_to_ball<T: Real>(p: [T; 3]) -> [T; 3] {
    let [x1, x2, t] = p;
    let planar = x1 * x1 + x2 * x2;
    let den = planar + (t + T::one()) * (t + T::one());
    let two = T::lit(2.0);
    [
        (planar + t * t - T::one()) / den,
        two * x1 / den,
        two * x2 / den,
    ]
}

/// Inverse of [`half_space_to_ball`].
pub fn ball_to_half_space<T: Real>(b: [T; 3]) -> [T; 3] {
    let [u, v, w] = b;
    // Undo the coordinate shuffle, then invert in the sphere of radius
    // sqrt(2) about (0, 0, -1).
    let (q1, q2, q3) = (v, w, T::one() - u);
    let den = q1 * q1 + q2 * q2 + q3 * q3;
    let two = T::lit(2.0);
    [two * q1 / den, two * q2 / den, two * q3 / den - T::one()]
}

/// Distance to the vertical axis in the half-space: `cosh d = |X| / t`.
pub fn axis_distance_half_space<T: Real>(p: [T; 3]) -> T {
    let [x1, x2, t] = p;
    ((x1 * x1 + x2 * x2 + t * t).sqrt() / t).acosh()
}

/// Half-space point at profile coordinates `(x, y)` and angle `theta`:
/// `(R tanh y e^{i theta}, R sech y)` with `R = e^x`.
pub fn profile_point<T: Real>(x: T, y: T, theta: T) -> [T; 3] {
    let r = x.exp();
    let radial = r * y.tanh();
    [radial * theta.cos(), radial * theta.sin(), r / y.cosh()]
}

fn triangle_area<T: Real>(p: [T; 3], q: [T; 3], r: [T; 3]) -> T {
    let e1 = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
    let e2 = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
    let c = [
        e1[1] * e2[2] - e1[2] * e2[1],
        e1[2] * e2[0] - e1[0] * e2[2],
        e1[0] * e2[1] - e1[1] * e2[0],
    ];
    (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt() * T::lit(0.5)
}

fn dist2<T: Real>(p: [T; 3], q: [T; 3]) -> T {
    (0..3).fold(T::zero(), |acc, i| acc + (p[i] - q[i]) * (p[i] - q[i]))
}

/// Revolve the sampled catenary of `C_a` and map it into the ball.
pub fn build_mesh<T: Real>(params: MeshParams<T>, tol: &Tolerance<T>) -> Result<MeshData<T>> {
    let MeshParams {
        a,
        y_max,
        n_profile,
        n_angle,
    } = params;
    if n_profile < 2 {
        return Err(domain("n_profile must be at least 2"));
    }
    if n_angle < 3 {
        return Err(domain("n_angle must be at least 3"));
    }
    let half = sample_catenary(a, y_max, n_profile, tol)?.points;
    let mut profile: Vec<(T, T)> = half.iter().rev().map(|&(x, y)| (-x, y)).collect();
    profile.extend_from_slice(&half[1..]);

    let step = T::lit(2.0) * T::PI() / T::from_usize(n_angle).unwrap();
    let mut vertices = Vec::with_capacity(profile.len() * n_angle);
    for &(x, y) in &profile {
        for j in 0..n_angle {
            let theta = step * T::from_usize(j).unwrap();
            vertices.push(half_space_to_ball(profile_point(x, y, theta)));
        }
    }

    let at = |i: usize, j: usize| i * n_angle + j % n_angle;
    let mut faces = Vec::with_capacity(2 * (profile.len() - 1) * n_angle);
    for i in 0..profile.len() - 1 {
        for j in 0..n_angle {
            let (p00, p10, p11, p01) = (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
            if dist2(vertices[p00], vertices[p11]) <= dist2(vertices[p10], vertices[p01]) {
                faces.push([p00, p10, p11]);
                faces.push([p00, p11, p01]);
            } else {
                faces.push([p00, p10, p01]);
                faces.push([p10, p11, p01]);
            }
        }
    }
    for f in &faces {
        if !(triangle_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]) > T::zero()) {
            return Err(crate::error::Error::Degenerate(format!(
                "zero-area face {f:?}"
            )));
        }
    }
    Ok(MeshData {
        vertices,
        faces,
        generator: params,
        profile,
    })
}

impl<T: Real> MeshData<T> {
    /// Hyperbolic distance from each vertex to the rotation axis.
    pub fn axis_distances(&self) -> Vec<T> {
        self.vertices
            .iter()
            .map(|&b| axis_distance_half_space(ball_to_half_space(b)))
            .collect()
    }

    /// Generating `y` for each vertex.
    pub fn vertex_heights(&self) -> impl Iterator<Item = T> + '_ {
        let n = self.generator.n_angle;
        self.profile
            .iter()
            .flat_map(move |&(_, y)| std::iter::repeat_n(y, n))
    }
}

/// Write `v` and `f` records. Face indices are 1-based.
pub fn write_obj<T: Real, W: Write>(mesh: &MeshData<T>, mut out: W) -> io::Result<()> {
    let g = &mesh.generator;
    writeln!(
        out,
        "# catenoid a={} y_max={} n_profile={} n_angle={}",
        g.a, g.y_max, g.n_profile, g.n_angle
    )?;
    for v in &mesh.vertices {
        writeln!(
            out,
            "v {:.15e} {:.15e} {:.15e}",
            v[0].as_f64(),
            v[1].as_f64(),
            v[2].as_f64()
        )?;
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    out.flush()
}

/// Function tabulated by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepFunction {
    Rho,
    Phi,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable<T> {
    pub function: SweepFunction,
    pub abscissas: Vec<T>,
    pub values: Vec<T>,
    pub tolerance: T,
}

/// Tabulate `rho` or `phi` at `n` equally spaced points of `[lo, hi]`. Both
/// functions are extended by 0 at `a = 0`.
pub fn sweep<T: Real>(
    function: SweepFunction,
    lo: T,
    hi: T,
    n: usize,
    tol: &Tolerance<T>,
) -> Result<SweepTable<T>> {
    if !(lo >= T::zero()) || !(hi > lo) || !hi.is_finite() {
        return Err(domain(format!(
            "sweep range must satisfy 0 <= lo < hi, got [{lo}, {hi}]"
        )));
    }
    if n < 2 {
        return Err(domain("sweep needs at least two points"));
    }
    let last = T::from_usize(n - 1).unwrap();
    let abscissas: Vec<T> = (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * T::from_usize(i).unwrap() / last
            }
        })
        .collect();
    let values = abscissas
        .par_iter()
        .map(|&a| {
            if a == T::zero() {
                return Ok(T::zero());
            }
            match function {
                SweepFunction::Rho => gomes_rho(a, tol),
                SweepFunction::Phi => area_deficit(a, tol),
            }
        })
        .collect::<Result<Vec<T>>>()?;
    Ok(SweepTable {
        function,
        abscissas,
        values,
        tolerance: tol.abs_tol(),
    })
}

/// Fixed-point decimal with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

impl<T: Real> SweepTable<T> {
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(b"a,value\n")?;
        for (a, v) in self.abscissas.iter().zip(&self.values) {
            writeln!(
                out,
                "{},{}",
                format_significant(a.as_f64(), CSV_DIGITS),
                format_significant(v.as_f64(), CSV_DIGITS)
            )?;
        }
        out.flush()
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }

    /// Index of the largest value.
    pub fn argmax(&self) -> usize {
        (0..self.values.len())
            .max_by(|&i, &j| {
                self.values[i]
                    .partial_cmp(&self.values[j])
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(0)
    }

    /// Indices `i` where the value changes strict sign between `i` and `i + 1`.
    pub fn sign_changes(&self) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| {
                (w[0] < T::zero() && w[1] > T::zero()) || (w[0] > T::zero() && w[1] < T::zero())
            })
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn cayley_round_trip() {
        for p in [[0.0, 0.0, 1.0], [0.3, -2.0, 0.01], [5.0, 1.0, 40.0]] {
            let b = half_space_to_ball(p);
            assert!(b.iter().map(|x| x * x).sum::<f64>() < 1.0);
            let q = ball_to_half_space(b);
            for i in 0..3 {
                assert!((p[i] - q[i]).abs() < 1e-12 * (1.0 + p[i].abs()));
            }
        }
        assert_eq!(half_space_to_ball([0.0, 0.0, 1.0]), [0.0, 0.0, 0.0]);
        let on_p0: [f64; 3] = half_space_to_ball([0.36, 0.48, 0.8]);
        assert!(on_p0[0].abs() < 1e-15);
    }

    #[test]
    fn profile_chart_distance() {
        for y in [0.1f64, 0.6, 3.0] {
            for x in [-1.0, 0.0, 2.0] {
                let d = axis_distance_half_space(profile_point(x, y, 0.7));
                assert!((d - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mesh_shape() {
        let params = MeshParams {
            a: 0.6,
            y_max: 3.0,
            n_profile: 8,
            n_angle: 6,
        };
        let mesh = build_mesh(params, &tol()).unwrap();
        assert_eq!(mesh.vertices.len(), 6 * 15);
        assert_eq!(mesh.faces.len(), 2 * 14 * 6);
        assert!(mesh
            .faces
            .iter()
            .flatten()
            .all(|&i| i < mesh.vertices.len()));
        for (d, y) in mesh.axis_distances().iter().zip(mesh.vertex_heights()) {
            assert!((d - y).abs() < 1e-6);
        }
        assert!(build_mesh(
            MeshParams {
                n_angle: 2,
                ..params
            },
            &tol()
        )
        .is_err());
        assert!(build_mesh(
            MeshParams {
                n_profile: 1,
                ..params
            },
            &tol()
        )
        .is_err());
        assert!(build_mesh(
            MeshParams {
                y_max: 0.5,
                ..params
            },
            &tol()
        )
        .is_err());
    }

    #[test]
    fn obj_records() {
        let mesh = build_mesh(
            MeshParams {
                a: 0.6,
                y_max: 2.0,
                n_profile: 3,
                n_angle: 4,
            },
            &tol(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_obj(&mesh, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 20);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 32);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.495773890488, 12), "0.495773890488");
        assert_eq!(format_significant(1.0, 12), "1.00000000000");
        assert_eq!(format_significant(-75.8653, 12), "-75.8653000000");
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(1234.4, 3), "1234");
    }

    #[test]
    fn small_sweep() {
        let t = sweep(SweepFunction::Rho, 0.0, 1.0, 2, &tol()).unwrap();
        assert_eq!(t.abscissas, vec![0.0, 1.0]);
        assert_eq!(t.values[0], 0.0);
        let csv = t.to_csv();
        assert!(csv.starts_with("a,value\n0,0\n1.00000000000,"));
        assert_eq!(csv.lines().count(), 3);
        assert!(sweep(SweepFunction::Phi, 1.0, 1.0, 5, &tol()).is_err());
        assert!(sweep(SweepFunction::Phi, -1.0, 1.0, 5, &tol()).is_err());
        assert!(sweep(SweepFunction::Phi, 0.0, 1.0, 1, &tol()).is_err());
    }
}
