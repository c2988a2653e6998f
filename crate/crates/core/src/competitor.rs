//! Cheaper annuli spanning the boundary of a catenoid tube, and the
//! stability regime of a catenoid.
//!
//! The competitor `Pi_{a,r}(s)` replaces the tube `C_a ∩ N_r(axis)` by a
//! round cylinder of radius `s` around the axis between the two spanning
//! disks, joined to the disks with their central `s`-disks removed.

use serde::Serialize;

use crate::catenoid::{area_difference, check_neck, disk_area_total, plane_separation};
use crate::constants::ConstantsBundle;
use crate::error::{domain, Result};
use crate::quadrature::Tolerance;
use crate::scalar::Real;

/// Number of halvings in the competitor search grid `s = a / 2^k`.
pub const COMPETITOR_GRID: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Regime {
    /// `a < a_c`: a negative direction exists for the second variation.
    Unstable,
    /// `a_c <= a < a_L`: stable, but a cheaper annulus exists.
    StableNotMinimizing,
    /// `a >= a_L`.
    AreaMinimizing,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Unstable => "Unstable",
            Regime::StableNotMinimizing => "StableNotMinimizing",
            Regime::AreaMinimizing => "AreaMinimizing",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RegimeLabel {
    pub regime: Regime,
    /// Within the bundle tolerance of `a_c`.
    pub near_critical: bool,
    /// Within the bundle tolerance of `a_L`.
    pub near_minimizing: bool,
}

/// Classify `C_a`. Ties at `a_c` go to the stable side.
pub fn classify_regime<T: Real>(a: T, bundle: &ConstantsBundle<T>) -> RegimeLabel {
    let tol = bundle.tolerance;
    let regime = if a < bundle.critical_neck - tol {
        Regime::Unstable
    } else if a < bundle.minimizing_neck {
        Regime::StableNotMinimizing
    } else {
        Regime::AreaMinimizing
    };
    RegimeLabel {
        regime,
        near_critical: (a - bundle.critical_neck).abs() <= tol,
        near_minimizing: (a - bundle.minimizing_neck).abs() <= tol,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompetitorReport<T> {
    pub a: T,
    pub r: T,
    /// Cylinder radius of the best competitor, if one is cheaper.
    pub s: Option<T>,
    pub area_catenoid: T,
    /// Area of the best competitor on the grid, cheaper or not.
    pub area_competitor: T,
    /// `area_catenoid - area_competitor`.
    pub margin: T,
}

/// Everything about `(a, r)` the competitor areas depend on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompetitorSetup<T> {
    pub a: T,
    pub r: T,
    /// Distance `L` between the spanning disks.
    pub separation: T,
    /// `Phi(a, r)`.
    pub phi_a_r: T,
    pub tube_area: T,
}

impl<T: Real> CompetitorSetup<T> {
    pub fn new(a: T, r: T, tol: &Tolerance<T>) -> Result<Self> {
        check_neck(a)?;
        if !(r > a) || !r.is_finite() {
            return Err(domain(format!("radius r = {r} must exceed the neck {a}")));
        }
        let half = tol.scaled(T::lit(0.5));
        let areas = area_difference(a, r, &half)?;
        Ok(Self {
            a,
            r,
            separation: plane_separation(a, r, &half)?,
            phi_a_r: areas.phi_a_r,
            tube_area: areas.tube_area,
        })
    }

    fn check_s(&self, s: T) -> Result<()> {
        if !(s > T::zero()) || s > self.a {
            return Err(domain(format!(
                "cylinder radius s = {s} must lie in (0, {}]",
                self.a
            )));
        }
        Ok(())
    }

    /// `2 pi L sinh s cosh s - 4 pi (cosh s - 1)`: cylinder minus the removed disks.
    fn correction(&self, s: T) -> T {
        let pi = T::PI();
        T::lit(2.0) * pi * self.separation * s.sinh() * s.cosh()
            - T::lit(4.0) * pi * (s.cosh() - T::one())
    }

    pub fn area(&self, s: T) -> Result<T> {
        self.check_s(s)?;
        Ok(self.correction(s) + disk_area_total(self.r)?)
    }

    /// Tube area minus competitor area, computed without the large disk term.
    pub fn margin(&self, s: T) -> Result<T> {
        self.check_s(s)?;
        Ok(self.phi_a_r - self.correction(s))
    }
}

/// Area of `Pi_{a,r}(s)`.
pub fn competitor_area<T: Real>(a: T, r: T, s: T, tol: &Tolerance<T>) -> Result<T> {
    CompetitorSetup::new(a, r, tol)?.area(s)
}

/// Search `s = a/2, a/4, ..., a/2^20` for the competitor with the largest margin.
pub fn find_cheaper_competitor<T: Real>(
    a: T,
    r: T,
    tol: &Tolerance<T>,
) -> Result<CompetitorReport<T>> {
    let setup = CompetitorSetup::new(a, r, tol)?;
    let mut best: Option<(T, T)> = None;
    let mut s = a;
    for _ in 0..COMPETITOR_GRID {
        s = s * T::lit(0.5);
        let m = setup.margin(s)?;
        if best.is_none_or(|(_, bm)| m > bm) {
            best = Some((s, m));
        }
    }
    let (s, margin) = best.expect("grid is non-empty");
    Ok(CompetitorReport {
        a,
        r,
        s: (margin > T::zero()).then_some(s),
        area_catenoid: setup.tube_area,
        area_competitor: setup.area(s)?,
        margin,
    })
}
