//! Scalar functions of the spherical catenoid family `C_a`.
//!
//! Coordinates are the warped product `ds^2 = cosh^2(y) dx^2 + dy^2` on the
//! half plane orthogonal to the rotation axis: `x` runs along the axis and
//! `y` is the hyperbolic distance to it. Every integral below has the factor
//! `1/sqrt(sinh^2(2t) - sinh^2(2a))`, which is evaluated through the exact
//! product `sinh(2(t - a)) * sinh(2(t + a))` with the offset `t - a` passed in
//! directly.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::quadrature::{quad_finite, quad_semi_infinite, quad_sqrt_offset, Tolerance};
use crate::scalar::Real;

/// Length of the interval next to the neck handled by the square-root
/// substitution; the remainder is smooth.
const HEAD_SPAN: f64 = 1.0;

/// Every integrand here decays at least like `exp(-3t)`.
const TAIL_DECAY: f64 = 3.0;

pub(crate) fn check_neck<T: Real>(a: T) -> Result<()> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(domain(format!("neck distance must be positive, got {a}")));
    }
    if a > T::max_neck() {
        return Err(domain(format!(
            "neck distance {a} exceeds the supported maximum {}",
            T::max_neck()
        )));
    }
    Ok(())
}

/// A spherical catenoid, identified by its neck distance to the axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Catenoid<T> {
    neck: T,
}

impl<T: Real> Catenoid<T> {
    pub fn new(neck: T) -> Result<Self> {
        check_neck(neck)?;
        Ok(Self { neck })
    }

    pub fn neck(&self) -> T {
        self.neck
    }

    /// Half the distance between the two asymptotic boundary planes.
    pub fn rho(&self, tol: &Tolerance<T>) -> Result<T> {
        gomes_rho(self.neck, tol)
    }

    pub fn deficit(&self, tol: &Tolerance<T>) -> Result<T> {
        area_deficit(self.neck, tol)
    }

    pub fn area_difference(&self, r: T, tol: &Tolerance<T>) -> Result<AreaReport<T>> {
        area_difference(self.neck, r, tol)
    }

    pub fn sample(&self, y_max: T, n: usize, tol: &Tolerance<T>) -> Result<CatenarySample<T>> {
        sample_catenary(self.neck, y_max, n, tol)
    }
}

/// Areas of the compact piece `C_a ∩ N_r(axis)` and of the two geodesic
/// disks spanning its boundary circles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaReport<T> {
    pub tube_area: T,
    pub disk_area_total: T,
    pub phi_a_r: T,
}

/// Points `(x, y)` of the generating catenary, from the neck outward.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatenarySample<T> {
    pub neck: T,
    pub points: Vec<(T, T)>,
}

/// `sinh(2d) / d`, extended by its limit at `d = 0`.
fn sinhc2<T: Real>(d: T) -> T {
    if d == T::zero() {
        T::lit(2.0)
    } else {
        (d + d).sinh() / d
    }
}

/// `sqrt(sinh^2(2t) - sinh^2(2a))` divided by `sqrt(t - a)`, with `d = t - a`.
fn root_gap_reduced<T: Real>(a: T, d: T) -> T {
    (sinhc2(d) * (T::lit(4.0) * a + d + d).sinh()).sqrt()
}

/// Catenary slope integrand `sinh(2a) / (cosh t sqrt(...))` times `sqrt(d)`.
fn profile_reduced<T: Real>(a: T, d: T) -> T {
    (a + a).sinh() / ((a + d).cosh() * root_gap_reduced(a, d))
}

/// `sinh t (sinh 2t / sqrt(...) - 1)` times `sqrt(d)`, written without the
/// subtraction: `sinh t sinh^2(2a) / (root (sinh 2t + root))`.
fn deficit_reduced<T: Real>(a: T, d: T) -> T {
    let t = a + d;
    let s = (a + a).sinh();
    let reduced = root_gap_reduced(a, d);
    let root = d.sqrt() * reduced;
    t.sinh() * s * s / (reduced * ((t + t).sinh() + root))
}

fn concavity_reduced<T: Real>(a: T, d: T) -> T {
    let numerator = T::lit(5.0) * (a + d).cosh()
        - T::lit(3.0) * (T::lit(3.0) * (a + d)).cosh()
        - T::lit(3.0) * (T::lit(5.0) * a + d).cosh()
        + (T::lit(7.0) * a + T::lit(3.0) * d).cosh();
    let s = (T::lit(4.0) * a + d + d).sinh();
    numerator / (root_gap_reduced(a, d) * s * s)
}

/// `int_a^upper kernel(t - a) / sqrt(t - a) dt` where `kernel` is one of the
/// reduced integrands above; `upper = None` means infinity.
fn neck_integral<T, F>(a: T, upper: Option<T>, kernel: F, tol: &Tolerance<T>) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let span = upper.map_or(T::infinity(), |u| u - a);
    let head_len = span.min(T::lit(HEAD_SPAN));
    let share = tol.split(2);
    let head = quad_sqrt_offset(&kernel, head_len, &share)?;
    if span <= T::lit(HEAD_SPAN) {
        return Ok(head.value);
    }
    let start = a + head_len;
    let plain = |t: T| {
        let d = t - a;
        kernel(d) / d.sqrt()
    };
    let rest = match upper {
        Some(u) => quad_finite(plain, start, u, &share)?,
        None => quad_semi_infinite(plain, start, T::lit(TAIL_DECAY), &share)?,
    };
    Ok(head.value + rest.value)
}

/// The Gomes function: `int_a^inf sinh(2a) / (cosh t sqrt(sinh^2 2t - sinh^2 2a)) dt`.
pub fn gomes_rho<T: Real>(a: T, tol: &Tolerance<T>) -> Result<T> {
    check_neck(a)?;
    neck_integral(a, None, |d| profile_reduced(a, d), tol)
}

/// Axial coordinate `x(y)` of the catenary with neck `a`.
pub fn catenary_x<T: Real>(a: T, y: T, tol: &Tolerance<T>) -> Result<T> {
    check_neck(a)?;
    if !(y >= a) || !y.is_finite() {
        return Err(domain(format!("y = {y} lies below the neck {a}")));
    }
    if y == a {
        return Ok(T::zero());
    }
    neck_integral(a, Some(y), |d| profile_reduced(a, d), tol)
}

/// `int` of the catenary slope between `y = a + u_lo^2` and `y = a + u_hi^2`,
/// in the substituted variable where the integrand is smooth.
fn catenary_segment<T: Real>(a: T, u_lo: T, u_hi: T, tol: &Tolerance<T>) -> Result<T> {
    let two = T::lit(2.0);
    quad_finite(|u: T| two * profile_reduced(a, u * u), u_lo, u_hi, tol).map(|r| r.value)
}

/// Sample the catenary at `n` heights graded quadratically toward the neck,
/// `y_i = a + (y_max - a) (i / (n - 1))^2`.
pub fn sample_catenary<T: Real>(
    a: T,
    y_max: T,
    n: usize,
    tol: &Tolerance<T>,
) -> Result<CatenarySample<T>> {
    check_neck(a)?;
    if !(y_max > a) || !y_max.is_finite() {
        return Err(domain(format!("y_max = {y_max} must exceed the neck {a}")));
    }
    if n < 2 {
        return Err(domain("need at least two samples"));
    }
    let span_root = (y_max - a).sqrt();
    let last = T::from_usize(n - 1).unwrap();
    let share = tol.split(n - 1);

    let mut points = Vec::with_capacity(n);
    points.push((T::zero(), a));
    let mut x = T::zero();
    let mut u_prev = T::zero();
    for i in 1..n {
        // u = sqrt(y - a) is uniform in i.
        let u = span_root * T::from_usize(i).unwrap() / last;
        x = x + catenary_segment(a, u_prev, u, &share)?;
        let y = if i == n - 1 { y_max } else { a + u * u };
        points.push((x, y));
        u_prev = u;
    }
    Ok(CatenarySample { neck: a, points })
}

impl<T: Real> CatenarySample<T> {
    /// The first integral `2 pi sinh(y) cosh(y) sin(theta)` of the minimal
    /// surface equation, with `theta` the angle between the profile and the
    /// geodesics orthogonal to the axis.
    ///
    /// Tangents come from five-point differences in `u = sqrt(y - a)`, in
    /// which the profile is smooth through the neck.
    pub fn conservation_values(&self) -> Vec<T> {
        let pts = &self.points;
        let n = pts.len();
        // Prepend the mirror image of the first samples (u -> -u) so the neck
        // is an interior node.
        let mirrored = (n - 1).min(STENCIL / 2);
        let mut ext: Vec<(T, T)> = (1..=mirrored)
            .rev()
            .map(|k| (-pts[k].0, pts[k].1))
            .collect();
        ext.extend_from_slice(pts);
        let root = |y: T| (y - self.neck).max(T::zero()).sqrt();
        let param: Vec<T> = (1..=mirrored)
            .rev()
            .map(|k| -root(pts[k].1))
            .chain(pts.iter().map(|p| root(p.1)))
            .collect();

        let two_pi = T::lit(2.0) * T::PI();
        (0..n)
            .map(|i| {
                let j = i + mirrored;
                let width = STENCIL.min(ext.len());
                let start = j.saturating_sub(width / 2).min(ext.len() - width);
                let window = start..start + width;
                let (dx, dy) = lagrange_derivative(&param[window.clone()], &ext[window], j - start);
                let y = pts[i].1;
                let along = y.cosh() * dx;
                let sin_theta = along.abs() / (along * along + dy * dy).sqrt();
                two_pi * y.sinh() * y.cosh() * sin_theta
            })
            .collect()
    }

    /// Value the conservation law must take: `pi sinh(2a)` (fixed by `theta = pi/2`
    /// at the neck).
    pub fn conservation_constant(&self) -> T {
        T::PI() * (self.neck + self.neck).sinh()
    }
}

/// Points in the finite-difference stencil used for profile tangents.
const STENCIL: usize = 5;

/// Derivative at node `at` of the polynomial interpolating `values` at the
/// abscissas `s`.
fn lagrange_derivative<T: Real>(s: &[T], values: &[(T, T)], at: usize) -> (T, T) {
    let m = s.len();
    let (mut dx, mut dy) = (T::zero(), T::zero());
    for k in 0..m {
        let w = if k == at {
            (0..m)
                .filter(|&i| i != at)
                .fold(T::zero(), |acc, i| acc + T::one() / (s[at] - s[i]))
        } else {
            let num = (0..m)
                .filter(|&i| i != k && i != at)
                .fold(T::one(), |acc, i| acc * (s[at] - s[i]));
            let den = (0..m)
                .filter(|&i| i != k)
                .fold(T::one(), |acc, i| acc * (s[k] - s[i]));
            num / den
        };
        dx = dx + w * values[k].0;
        dy = dy + w * values[k].1;
    }
    (dx, dy)
}

/// Area of the geodesic disk of radius `r`, counted twice: `4 pi (cosh r - 1)`.
pub fn disk_area_total<T: Real>(r: T) -> Result<T> {
    if !(r >= T::zero()) || !r.is_finite() {
        return Err(domain(format!("disk radius must be non-negative, got {r}")));
    }
    Ok(T::lit(4.0) * T::PI() * (r.cosh() - T::one()))
}

fn check_radius<T: Real>(a: T, r: T) -> Result<()> {
    if !(r >= a) || !r.is_finite() {
        return Err(domain(format!(
            "radius r = {r} must be at least the neck {a}"
        )));
    }
    Ok(())
}

/// Area of `C_a ∩ N_r(axis)`.
pub fn tube_area<T: Real>(a: T, r: T, tol: &Tolerance<T>) -> Result<T> {
    area_difference(a, r, tol).map(|rep| rep.tube_area)
}

/// `Phi(a, r)`: tube area minus the two spanning disks.
///
/// `Phi` is integrated directly from the bounded difference integrand and
/// the tube area is recovered as `Phi + 4 pi (cosh r - 1)`, so both carry
/// absolute accuracy even when the areas themselves are large.
pub fn area_difference<T: Real>(a: T, r: T, tol: &Tolerance<T>) -> Result<AreaReport<T>> {
    check_neck(a)?;
    check_radius(a, r)?;
    let four_pi = T::lit(4.0) * T::PI();
    let integral = if r == a {
        T::zero()
    } else {
        neck_integral(
            a,
            Some(r),
            |d| deficit_reduced(a, d),
            &tol.scaled(T::one() / four_pi),
        )?
    };
    let neck_disks = disk_area_total(a)?;
    let disk_area_total = disk_area_total(r)?;
    let phi_a_r = four_pi * integral - neck_disks;
    let tube_area = if r == a {
        T::zero()
    } else {
        phi_a_r + disk_area_total
    };
    Ok(AreaReport {
        tube_area,
        disk_area_total,
        phi_a_r,
    })
}

/// The area deficit `phi(a) = lim_{r -> inf} Phi(a, r)`.
pub fn area_deficit<T: Real>(a: T, tol: &Tolerance<T>) -> Result<T> {
    check_neck(a)?;
    let four_pi = T::lit(4.0) * T::PI();
    let integral = neck_integral(
        a,
        None,
        |d| deficit_reduced(a, d),
        &tol.scaled(T::one() / four_pi),
    )?;
    Ok(four_pi * integral - disk_area_total(a)?)
}

/// Distance `L` between the two disks spanning `∂(C_a ∩ N_r)`; equals
/// `2 x(r)`.
pub fn plane_separation<T: Real>(a: T, r: T, tol: &Tolerance<T>) -> Result<T> {
    check_radius(a, r)?;
    Ok(T::lit(2.0) * catenary_x(a, r, &tol.scaled(T::lit(0.5)))?)
}

/// `f(x) = -30 cosh 3x - 18 cosh 5x + 10 sinh 7x + 15 (1 - K) cosh 8x`, whose
/// zero `a_0` bounds the region where `phi` is concave.
pub fn mvt_f<T: Real>(x: T, k: T) -> T {
    T::lit(-30.0) * (T::lit(3.0) * x).cosh() - T::lit(18.0) * (T::lit(5.0) * x).cosh()
        + T::lit(10.0) * (T::lit(7.0) * x).sinh()
        + T::lit(15.0) * (T::one() - k) * (T::lit(8.0) * x).cosh()
}

/// The two pieces `(I1, I2)` with `phi''(a) = I1 + I2`.
///
/// `I1 = 4 pi int_0^inf sinh(a+t) (sinh(2a+2t)/sqrt(...) - 1) dt - 4 pi K cosh a`
/// and `I2 = -4 pi int_0^inf N(a,t) / (sqrt(...) sinh^2(4a+2t)) dt - 4 pi (1-K) cosh a`
/// with `N = 5 cosh(a+t) - 3 cosh(3a+3t) - 3 cosh(5a+t) + cosh(7a+3t)`.
pub fn concavity_terms<T: Real>(a: T, tol: &Tolerance<T>) -> Result<(T, T)> {
    check_neck(a)?;
    let k = crate::constants::compute_k(&tol.scaled(T::lit(0.1)))?;
    let four_pi = T::lit(4.0) * T::PI();
    let share = tol.scaled(T::lit(0.25) / four_pi);
    let first = neck_integral(a, None, |d| deficit_reduced(a, d), &share)?;
    let second = neck_integral(a, None, |d| concavity_reduced(a, d), &share)?;
    let i1 = four_pi * first - four_pi * k * a.cosh();
    let i2 = -four_pi * second - four_pi * (T::one() - k) * a.cosh();
    Ok((i1, i2))
}
