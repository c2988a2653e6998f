//! Solvers for the named constants of the catenoid family and the bundle
//! that carries them to the classifiers.
//!
//! * `K = int_0^1 x^-2 (1/sqrt(1 - x^4) - 1) dx`
//! * `a_c`, the maximizer of the Gomes function `rho`
//! * `a_0`, the zero of [`mvt_f`]
//! * `a_l = arccosh(1 / (1 - K))`
//! * `a_L`, the zero of the area deficit `phi`

use std::sync::OnceLock;

use serde::Serialize;

use crate::catenoid::{area_deficit, gomes_rho, mvt_f};
use crate::error::{domain, Error, Result};
use crate::quadrature::{quad_sqrt_offset, Tolerance};
use crate::scalar::Real;

/// Solved constants, ordered `0 < a_0 < a_c < a_L < a_l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsBundle<T> {
    #[serde(rename = "K")]
    pub k: T,
    #[serde(rename = "a_c")]
    pub critical_neck: T,
    /// `rho(a_c)`.
    pub rho_max: T,
    #[serde(rename = "a_0")]
    pub concavity_neck: T,
    #[serde(rename = "a_l")]
    pub sufficient_neck: T,
    #[serde(rename = "a_L")]
    pub minimizing_neck: T,
    /// `2 rho(a_c)`, the largest circle distance spanned by a catenoid.
    #[serde(rename = "two_rho_ac")]
    pub max_separation: T,
    /// `2 rho(a_L)`.
    #[serde(rename = "two_rho_aL")]
    pub minimizing_separation: T,
    /// Bracket width the roots were solved to.
    pub tolerance: T,
}

/// Bracket and stopping rule for [`solve_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootFindConfig<T> {
    pub bracket_lo: T,
    pub bracket_hi: T,
    pub x_tol: T,
    pub max_iterations: usize,
}

impl<T: Real> RootFindConfig<T> {
    pub fn new(bracket_lo: T, bracket_hi: T, x_tol: T) -> Result<Self> {
        if !(bracket_lo < bracket_hi) {
            return Err(domain(format!(
                "empty bracket [{bracket_lo}, {bracket_hi}]"
            )));
        }
        if !(x_tol > T::zero()) {
            return Err(domain("x_tol must be positive"));
        }
        Ok(Self {
            bracket_lo,
            bracket_hi,
            x_tol,
            max_iterations: 200,
        })
    }
}

/// Integrand of `K` multiplied by `sqrt(1 - x)`, written without the
/// `1/sqrt(1-x^4) - 1` cancellation near the origin.
fn k_reduced<T: Real>(x: T, one_minus_x: T) -> T {
    let rest = (T::one() + x) * (T::one() + x * x);
    let q = (one_minus_x * rest).sqrt();
    x * x / (rest.sqrt() * (T::one() + q))
}

/// The integrand `x^-2 (1/sqrt(1 - x^4) - 1)` of `K`, continuous at 0.
pub fn k_integrand<T: Real>(x: T) -> T {
    let one_minus_x = T::one() - x;
    k_reduced(x, one_minus_x) / one_minus_x.sqrt()
}

/// `K`, with the square-root singularity at `x = 1` removed by substitution.
pub fn compute_k<T: Real>(tol: &Tolerance<T>) -> Result<T> {
    quad_sqrt_offset(|d| k_reduced(T::one() - d, d), T::one(), tol).map(|r| r.value)
}

/// Brent's method on a sign-changing bracket.
pub fn solve_root<T, F>(f: F, cfg: &RootFindConfig<T>) -> Result<T>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    let mut a = cfg.bracket_lo;
    let mut b = cfg.bracket_hi;
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo: a.as_f64(),
            hi: b.as_f64(),
            f_lo: fa.as_f64(),
            f_hi: fb.as_f64(),
        });
    }

    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..cfg.max_iterations {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + cfg.x_tol / two;
        let xm = (c - b) / two;
        if xm.abs() <= tol1 || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = three * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol1 {
            b + d
        } else {
            b + tol1 * xm.signum()
        };
        fb = f(b)?;
    }
    Err(Error::NotConverged {
        iterations: cfg.max_iterations,
        width: (c - b).abs().as_f64(),
    })
}

/// [`solve_root`] on a seed bracket, widening it (doubling its width about
/// the center, clamped to `[limit_lo, limit_hi]`) until the sign changes.
pub fn solve_root_expanding<T, F>(
    f: F,
    cfg: &RootFindConfig<T>,
    limit_lo: T,
    limit_hi: T,
) -> Result<T>
where
    T: Real,
    F: Fn(T) -> Result<T>,
{
    let mut current = *cfg;
    let mut last_err = None;
    for _ in 0..12 {
        match solve_root(&f, &current) {
            Err(e @ Error::NoSignChange { .. }) => {
                last_err = Some(e);
                let center = (current.bracket_lo + current.bracket_hi) / T::lit(2.0);
                let width = current.bracket_hi - current.bracket_lo;
                let lo = (center - width).max(limit_lo);
                let hi = (center + width).min(limit_hi);
                if lo == current.bracket_lo && hi == current.bracket_hi {
                    break;
                }
                current.bracket_lo = lo;
                current.bracket_hi = hi;
            }
            other => return other,
        }
    }
    Err(last_err.unwrap())
}

/// Root-finding tolerance matched to a quadrature tolerance: roots are
/// resolved to `abs_tol`, never below about `1e-12` (scaled by the type's epsilon).
pub(crate) fn x_tol_for<T: Real>(tol: &Tolerance<T>) -> T {
    tol.abs_tol().max(T::epsilon() * T::lit(5000.0))
}

/// Tighter quadrature for evaluations that get differenced.
fn inner_tol<T: Real>(tol: &Tolerance<T>) -> Tolerance<T> {
    let floor = T::epsilon() * T::lit(100.0);
    let scaled = tol.abs_tol() * T::lit(0.01);
    tol.scaled(scaled.max(floor) / tol.abs_tol())
}

const DERIVATIVE_STEP: f64 = 1e-5;

/// `rho'(a)` by central differences with one Richardson step.
pub fn rho_derivative<T: Real>(a: T, tol: &Tolerance<T>) -> Result<T> {
    let h = T::lit(DERIVATIVE_STEP);
    let central =
        |h: T| -> Result<T> { Ok((gomes_rho(a + h, tol)? - gomes_rho(a - h, tol)?) / (h + h)) };
    let coarse = central(h)?;
    let fine = central(h / T::lit(2.0))?;
    Ok((T::lit(4.0) * fine - coarse) / T::lit(3.0))
}

/// The maximizer `a_c` of `rho`, as the zero of `rho'` on `[0.3, 0.7]`.
pub fn solve_a_c<T: Real>(tol: &Tolerance<T>) -> Result<T> {
    let inner = inner_tol(tol);
    let cfg = RootFindConfig::new(T::lit(0.3), T::lit(0.7), x_tol_for(tol))?;
    solve_root_expanding(
        |a| rho_derivative(a, &inner),
        &cfg,
        T::lit(0.05),
        T::lit(2.0),
    )
}

/// The zero `a_0` of `mvt_f(., K)` on `[1e-6, log(3/2)]`.
pub fn solve_a_0<T: Real>(k: T, tol: &Tolerance<T>) -> Result<T> {
    if !(k > T::zero() && k < T::one()) {
        return Err(domain(format!("K must lie in (0, 1), got {k}")));
    }
    let cfg = RootFindConfig::new(T::lit(1e-6), T::lit(1.5).ln(), x_tol_for(tol))?;
    solve_root_expanding(|x| Ok(mvt_f(x, k)), &cfg, T::zero(), T::lit(2.0))
}

/// `a_l = arccosh(1 / (1 - K))`.
pub fn sufficient_neck<T: Real>(k: T) -> T {
    (T::one() / (T::one() - k)).acosh()
}

/// The zero `a_L` of the area deficit, bracketed by `[a_c, a_l]`.
pub fn solve_a_l_in<T: Real>(a_c: T, a_l: T, tol: &Tolerance<T>) -> Result<T> {
    let inner = inner_tol(tol);
    let cfg = RootFindConfig::new(a_c, a_l, x_tol_for(tol))?;
    solve_root_expanding(|a| area_deficit(a, &inner), &cfg, T::lit(0.05), T::lit(3.0))
}

/// The zero `a_L` of the area deficit, solving for `a_c` and `a_l` first.
pub fn solve_a_big_l<T: Real>(tol: &Tolerance<T>) -> Result<T> {
    let k = compute_k(tol)?;
    let a_c = solve_a_c(tol)?;
    solve_a_l_in(a_c, sufficient_neck(k), tol)
}

/// Solve every constant and check their ordering.
pub fn constants_bundle<T: Real>(tol: &Tolerance<T>) -> Result<ConstantsBundle<T>> {
    let k = compute_k(&inner_tol(tol))?;
    let a_c = solve_a_c(tol)?;
    let a_0 = solve_a_0(k, tol)?;
    let a_l = sufficient_neck(k);
    let a_big_l = solve_a_l_in(a_c, a_l, tol)?;
    let rho_inner = inner_tol(tol);
    let rho_max = gomes_rho(a_c, &rho_inner)?;
    let rho_l = gomes_rho(a_big_l, &rho_inner)?;

    let ordered = T::zero() < a_0 && a_0 < a_c && a_c < a_big_l && a_big_l < a_l;
    if !ordered {
        return Err(Error::Consistency(format!(
            "expected 0 < a_0 < a_c < a_L < a_l, got {a_0}, {a_c}, {a_big_l}, {a_l}"
        )));
    }
    Ok(ConstantsBundle {
        k,
        critical_neck: a_c,
        rho_max,
        concavity_neck: a_0,
        sufficient_neck: a_l,
        minimizing_neck: a_big_l,
        max_separation: rho_max + rho_max,
        minimizing_separation: rho_l + rho_l,
        tolerance: x_tol_for(tol),
    })
}

static DEFAULT_BUNDLE: OnceLock<Result<ConstantsBundle<f64>>> = OnceLock::new();

/// Constants at the default tolerance, solved once per process.
pub fn default_bundle() -> Result<&'static ConstantsBundle<f64>> {
    DEFAULT_BUNDLE
        .get_or_init(|| constants_bundle(&Tolerance::default()))
        .as_ref()
        .map_err(Clone::clone)
}
