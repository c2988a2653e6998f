//! Round circles on the sphere at infinity and the catenoids spanning them.
//!
//! A circle is stored as a unit spacelike vector in Minkowski space
//! `R^{3,1}` with form `<v, w> = v0 w0 + v1 w1 + v2 w2 - v3 w3`. In the
//! boundary chart `C ∪ {∞}` of the upper half-space, the circle with center
//! `c` and radius `r` is
//!
//! ```text
//! v = (Re c / r, Im c / r, (|c|^2 - r^2 - 1) / 2r, (|c|^2 - r^2 + 1) / 2r)
//! ```
//!
//! and for two such circles `<v1, v2> = (r1^2 + r2^2 - |c1 - c2|^2) / (2 r1 r2)`.
//! When the circles are disjoint `|<v1, v2>| > 1`, and the hyperbolic
//! distance between the planes they bound is `arccosh |<v1, v2>|`.

use num_complex::Complex;
use serde::Serialize;

use crate::catenoid::gomes_rho;
use crate::competitor::{classify_regime, RegimeLabel};
use crate::constants::{solve_root_expanding, ConstantsBundle, RootFindConfig};
use crate::error::{domain, Error, Result};
use crate::quadrature::Tolerance;
use crate::scalar::Real;

/// Slack on `|<v1, v2>| - 1` below which a pair counts as tangent.
pub const TANGENCY_SLACK: f64 = 1e-12;

/// Width of the band around `2 rho(a_c)` where the two catenoids merge.
pub const CRITICAL_BAND: f64 = 1e-5;

/// Smallest neck tried for the inner branch of `2 rho(a) = d`.
const INNER_NECK_FLOOR: f64 = 1e-9;

/// A round circle on the sphere at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleAtInfinity<T> {
    v: [T; 4],
}

/// A point of `C ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint<T> {
    Finite(Complex<T>),
    Infinity,
}

fn minkowski<T: Real>(v: &[T; 4], w: &[T; 4]) -> T {
    // v2 w2 - v3 w3 split into light-cone coordinates, which stay small for
    // circles of moderate radius.
    let half = T::lit(0.5);
    v[0] * w[0]
        + v[1] * w[1]
        + half * ((v[2] - v[3]) * (w[2] + w[3]) + (v[2] + v[3]) * (w[2] - w[3]))
}

impl<T: Real> CircleAtInfinity<T> {
    /// Circle through `∞`: the line `{z : Re(conj(n) z) = offset}` with unit
    /// normal `n = e^{i angle}`.
    pub fn line(normal_angle: T, offset: T) -> Self {
        Self {
            v: [normal_angle.cos(), normal_angle.sin(), offset, offset],
        }
    }

    /// Build from raw inversive coordinates, normalizing to `<v, v> = 1`.
    pub fn from_inversive(v: [T; 4]) -> Result<Self> {
        let norm = minkowski(&v, &v);
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(domain("inversive coordinates must be spacelike"));
        }
        let s = norm.sqrt();
        Ok(Self {
            v: [v[0] / s, v[1] / s, v[2] / s, v[3] / s],
        })
    }

    pub fn inversive(&self) -> [T; 4] {
        self.v
    }

    /// `<v1, v2>` in the Minkowski form.
    pub fn inner(&self, other: &Self) -> T {
        minkowski(&self.v, &other.v)
    }

    /// Center and radius in the boundary chart.
    pub fn center_radius(&self) -> Result<(Complex<T>, T)> {
        let [a, b, c, d] = self.v;
        let inv_r = d - c;
        if inv_r.abs() <= T::epsilon() * T::lit(16.0) * (a.abs() + b.abs() + c.abs() + d.abs()) {
            return Err(Error::LineThroughInfinity);
        }
        let r = inv_r.abs().recip();
        Ok((Complex::new(a / inv_r, b / inv_r), r))
    }

    /// Three well-spread points on the circle.
    fn three_points(&self) -> [BoundaryPoint<T>; 3] {
        match self.center_radius() {
            Ok((c, r)) => {
                let third = T::lit(2.0) * T::PI() / T::lit(3.0);
                [0.0, 1.0, 2.0]
                    .map(|k| BoundaryPoint::Finite(c + Complex::from_polar(r, third * T::lit(k))))
            }
            Err(_) => {
                let [a, b, c, _] = self.v;
                let normal = Complex::new(a, b);
                let foot = normal * c;
                let dir = normal * Complex::i();
                [
                    BoundaryPoint::Finite(foot - dir),
                    BoundaryPoint::Finite(foot + dir),
                    BoundaryPoint::Infinity,
                ]
            }
        }
    }
}

/// Circle with center `c` and Euclidean radius `rho_e` in the boundary chart.
pub fn circle_from_center_radius<T: Real>(c: Complex<T>, rho_e: T) -> Result<CircleAtInfinity<T>> {
    if !(rho_e > T::zero()) || !rho_e.is_finite() {
        return Err(domain(format!("radius must be positive, got {rho_e}")));
    }
    if !c.re.is_finite() || !c.im.is_finite() {
        return Err(domain("center must be finite"));
    }
    let two_r = rho_e + rho_e;
    let power = c.norm_sqr() - rho_e * rho_e;
    CircleAtInfinity::from_inversive([
        c.re / rho_e,
        c.im / rho_e,
        (power - T::one()) / two_r,
        (power + T::one()) / two_r,
    ])
}

/// Orientation-preserving isometry `z -> (a z + b) / (c z + d)`, `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryMap<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Real> IsometryMap<T> {
    /// Normalize an invertible matrix to determinant one.
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.norm() > T::epsilon()) || !det.norm().is_finite() {
            return Err(Error::Degenerate("singular Möbius matrix".into()));
        }
        let s = det.sqrt();
        Ok(Self {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        Self {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn determinant(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply_point(&self, p: BoundaryPoint<T>) -> BoundaryPoint<T> {
        match p {
            BoundaryPoint::Infinity => {
                if self.c.norm() == T::zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() == T::zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Equal as elements of `PSL(2, C)` (up to sign) within `eps`.
    pub fn approx_eq(&self, other: &Self, eps: T) -> bool {
        let diff = |s: T| {
            (self.a - other.a * s).norm()
                + (self.b - other.b * s).norm()
                + (self.c - other.c * s).norm()
                + (self.d - other.d * s).norm()
        };
        diff(T::one()) <= eps || diff(-T::one()) <= eps
    }
}

fn circumcircle<T: Real>(p: [Complex<T>; 3]) -> Result<CircleAtInfinity<T>> {
    let [a, b, c] = p;
    let ab = b - a;
    let ac = c - a;
    let cross = ab.re * ac.im - ab.im * ac.re;
    let scale = ab.norm() * ac.norm();
    if cross.abs() <= T::lit(1e-12) * scale {
        return Err(Error::Degenerate(
            "image points are collinear; the image circle passes through infinity".into(),
        ));
    }
    let d = cross + cross;
    let ab2 = ab.norm_sqr();
    let ac2 = ac.norm_sqr();
    let offset = Complex::new(
        (ac.im * ab2 - ab.im * ac2) / d,
        (ab.re * ac2 - ac.re * ab2) / d,
    );
    circle_from_center_radius(a + offset, offset.norm())
}

/// Image of a circle under an isometry, fitted through the images of three
/// of its points.
pub fn apply_isometry<T: Real>(
    m: &IsometryMap<T>,
    circle: &CircleAtInfinity<T>,
) -> Result<CircleAtInfinity<T>> {
    let mut images = [Complex::new(T::zero(), T::zero()); 3];
    for (slot, p) in images.iter_mut().zip(circle.three_points()) {
        match m.apply_point(p) {
            BoundaryPoint::Finite(z) => *slot = z,
            BoundaryPoint::Infinity => {
                return Err(Error::Degenerate(
                    "image circle passes through infinity".into(),
                ))
            }
        }
    }
    circumcircle(images)
}

/// `arccosh |<v1, v2>|`: hyperbolic distance between the planes asymptotic
/// to two disjoint circles.
pub fn plane_distance<T: Real>(c1: &CircleAtInfinity<T>, c2: &CircleAtInfinity<T>) -> Result<T> {
    let product = c1.inner(c2).abs();
    if product <= T::one() + T::lit(TANGENCY_SLACK) {
        return Err(Error::NotDisjoint {
            product: product.as_f64(),
        });
    }
    Ok(product.acosh())
}

/// [`plane_distance`] extended by zero to tangent, intersecting and equal
/// circles, whose planes meet (possibly at infinity).
pub fn plane_distance_closed<T: Real>(c1: &CircleAtInfinity<T>, c2: &CircleAtInfinity<T>) -> T {
    c1.inner(c2).abs().max(T::one()).acosh()
}

/// The two limit points of the coaxial pencil spanned by a disjoint pair.
fn limit_points<T: Real>(
    c1: &CircleAtInfinity<T>,
    c2: &CircleAtInfinity<T>,
) -> Result<(BoundaryPoint<T>, BoundaryPoint<T>)> {
    let k = c1.inner(c2);
    if k.abs() <= T::one() + T::lit(TANGENCY_SLACK) {
        return Err(Error::NotDisjoint {
            product: k.abs().as_f64(),
        });
    }
    // v1 + lambda v2 is null for lambda^2 + 2 k lambda + 1 = 0.
    let disc = (k * k - T::one()).sqrt();
    let lambdas = [-k + disc, -k - disc];
    let [p, q] = lambdas.map(|l| {
        let v1 = c1.inversive();
        let v2 = c2.inversive();
        let n = [0, 1, 2, 3].map(|i| v1[i] + l * v2[i]);
        let scale = n.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
        let denom = n[3] - n[2];
        if denom.abs() <= T::epsilon() * T::lit(64.0) * scale {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(Complex::new(n[0] / denom, n[1] / denom))
        }
    });
    Ok((p, q))
}

/// An isometry carrying a disjoint pair to circles centered at 0, the image
/// of `c1` being the smaller one. The log of the radius ratio of the images
/// equals [`plane_distance`].
pub fn normalize_coaxial<T: Real>(
    c1: &CircleAtInfinity<T>,
    c2: &CircleAtInfinity<T>,
) -> Result<IsometryMap<T>> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let (p, q) = limit_points(c1, c2)?;
    let base = match (p, q) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => IsometryMap::new(one, -p, one, -q)?,
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity)
        | (BoundaryPoint::Infinity, BoundaryPoint::Finite(p)) => {
            IsometryMap::new(one, -p, zero, one)?
        }
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => {
            return Err(Error::Degenerate("coincident limit points".into()))
        }
    };
    let r1 = apply_isometry(&base, c1)?.center_radius()?.1;
    let r2 = apply_isometry(&base, c2)?.center_radius()?.1;
    if r1 <= r2 {
        Ok(base)
    } else {
        // z -> 1/z swaps inside and outside.
        let i = Complex::i();
        let flip = IsometryMap::new(zero, i, i, zero)?;
        Ok(flip.compose(&base))
    }
}

/// Hyperbolic translation by `log(lambda)` along the vertical axis: `z -> lambda z`.
pub fn axis_translation<T: Real>(lambda: T) -> Result<IsometryMap<T>> {
    if !(lambda > T::zero()) || !lambda.is_finite() {
        return Err(domain(format!(
            "translation factor must be positive, got {lambda}"
        )));
    }
    let s = lambda.sqrt();
    let zero = Complex::new(T::zero(), T::zero());
    Ok(IsometryMap {
        a: Complex::new(s, T::zero()),
        b: zero,
        c: zero,
        d: Complex::new(s.recip(), T::zero()),
    })
}

/// One catenoid spanning a circle pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatenoidSolution<T> {
    pub neck: T,
    pub regime: RegimeLabel,
}

/// All catenoids (zero, one or two) asymptotic to a pair at distance `separation`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatenoidSolutions<T> {
    pub separation: T,
    pub solutions: Vec<CatenoidSolution<T>>,
}

/// Catenoids spanning two disjoint circles.
pub fn catenoids_for_circles<T: Real>(
    c1: &CircleAtInfinity<T>,
    c2: &CircleAtInfinity<T>,
    bundle: &ConstantsBundle<T>,
    tol: &Tolerance<T>,
) -> Result<CatenoidSolutions<T>> {
    let d = plane_distance(c1, c2)?;
    catenoids_for_distance(d, bundle, tol)
}

/// Solve `2 rho(a) = d` on both sides of `a_c`.
pub fn catenoids_for_distance<T: Real>(
    d: T,
    bundle: &ConstantsBundle<T>,
    tol: &Tolerance<T>,
) -> Result<CatenoidSolutions<T>> {
    if !(d > T::zero()) || !d.is_finite() {
        return Err(domain(format!("circle distance must be positive, got {d}")));
    }
    let a_c = bundle.critical_neck;
    let band = T::lit(CRITICAL_BAND);
    let label = |a: T| CatenoidSolution {
        neck: a,
        regime: classify_regime(a, bundle),
    };
    let gap = d - bundle.max_separation;
    if gap > band {
        return Ok(CatenoidSolutions {
            separation: d,
            solutions: vec![],
        });
    }
    if gap.abs() <= band {
        return Ok(CatenoidSolutions {
            separation: d,
            solutions: vec![label(a_c)],
        });
    }

    let x_tol = crate::constants::x_tol_for(tol);
    let residual = |a: T| -> Result<T> { Ok(gomes_rho(a, tol)? + gomes_rho(a, tol)? - d) };

    let floor = T::lit(INNER_NECK_FLOOR);
    let inner = solve_root_expanding(
        residual,
        &RootFindConfig::new(floor, a_c, x_tol)?,
        floor,
        a_c,
    )
    .map_err(|e| match e {
        Error::NoSignChange { .. } => domain(format!(
            "distance {d} is below 2 rho({floor}); inner catenoid neck is out of range"
        )),
        other => other,
    })?;

    // Outer bracket grows geometrically from [a_c, 2 a_c] up to the neck cap.
    let cap = T::max_neck();
    let mut hi = a_c + a_c;
    while residual(hi)? > T::zero() {
        if hi >= cap {
            return Err(domain(format!(
                "distance {d} needs an outer neck beyond the supported maximum {cap}"
            )));
        }
        hi = (hi + hi).min(cap);
    }
    let outer = crate::constants::solve_root(residual, &RootFindConfig::new(a_c, hi, x_tol)?)?;

    Ok(CatenoidSolutions {
        separation: d,
        solutions: vec![label(inner), label(outer)],
    })
}

/// Asymptotic boundary of the standard `C_a`: the axis is the vertical line
/// over 0 and the symmetry plane is the unit hemisphere, so the circles are
/// centered at 0 with radii `exp(-rho(a))` and `exp(rho(a))`.
pub fn boundary_circles<T: Real>(
    a: T,
    tol: &Tolerance<T>,
) -> Result<(CircleAtInfinity<T>, CircleAtInfinity<T>)> {
    let rho = gomes_rho(a, tol)?;
    let origin = Complex::new(T::zero(), T::zero());
    Ok((
        circle_from_center_radius(origin, (-rho).exp())?,
        circle_from_center_radius(origin, rho.exp())?,
    ))
}
