//! Coarse-grained mass, mass function, gamma-dimension, and the integral
//! staircase of a Cantor-type set.
//!
//! The infimum in the coarse-grained mass is approximated over a structured
//! family of partitions: uniform grids, plus gap-aligned partitions whose
//! interior breakpoints sit in removed gaps so that cells either cover one
//! retained block or lie inside a gap. Gap-sliver contributions are taken in
//! their vanishing limit, which is the infimum the family attains for
//! Cantor-type approximants. Everything is deterministic: the candidate
//! enumeration order is fixed.

use crate::fractalset::{build_cantor, CantorSpec, IntervalUnion};
use crate::specfun::gamma_fn;
use crate::{Error, Result};

/// Relative tolerance on the last two mesh values below which the mass
/// function reports convergence.
pub const CONVERGENCE_RTOL: f64 = 1e-3;

/// Partition candidates examined when the caller does not pick a budget.
pub const DEFAULT_SEARCH_BUDGET: u32 = 4;

/// Uniform candidates above this cell count are skipped; for Cantor-type
/// sets the gap-aligned family provides the minimizer at fine meshes, so
/// nothing is lost while mesh sizes stay bounded.
const UNIFORM_CELL_CAP: u64 = 100_000;

/// Lower end of the bisection bracket used by the dimension search.
const DIMENSION_ALPHA_MIN: f64 = 0.01;

/// A single coarse-grained mass evaluation.
///
/// `converged` records whether successive mesh refinements changed the value
/// by less than [`CONVERGENCE_RTOL`]; a lone evaluation reports `false`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassEstimate {
    pub value: f64,
    pub delta: f64,
    pub converged: bool,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(())
}

/// Upper-bound approximation of the coarse-grained mass
/// `xi_delta^alpha(F, a, b)`: the best Gamma(alpha+1)-weighted flagged-cell
/// sum over the candidate partition family described in the module docs.
/// A mesh of `delta >= b - a` is handled by the single-cell partition.
pub fn coarse_mass(
    set: &IntervalUnion,
    alpha: f64,
    a: f64,
    b: f64,
    delta: f64,
    search_budget: u32,
) -> Result<MassEstimate> {
    check_alpha(alpha)?;
    if !(a < b) {
        return Err(Error::InvalidParameter(format!(
            "coarse mass requires a < b, got [{a}, {b}]"
        )));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "mesh delta must be positive and finite, got {delta}"
        )));
    }
    if search_budget == 0 {
        return Err(Error::InvalidParameter(
            "search_budget must be at least 1".into(),
        ));
    }

    let weight = gamma_fn(alpha + 1.0).expect("alpha + 1 lies in (1, 2]");
    let mut best = gap_aligned_sum(set, alpha, a, b, delta);
    let n_min = (((b - a) / delta).ceil() as u64).max(1);
    for i in 0..(search_budget - 1) as u64 {
        let n = n_min + i;
        if n > UNIFORM_CELL_CAP {
            break;
        }
        best = best.min(uniform_sum(set, alpha, a, b, n));
    }
    Ok(MassEstimate {
        value: weight * best,
        delta,
        converged: false,
    })
}

/// Flagged-cell sum for the uniform n-cell partition of `[a, b]`.
fn uniform_sum(set: &IntervalUnion, alpha: f64, a: f64, b: f64, n: u64) -> f64 {
    let h = (b - a) / n as f64;
    let mut flagged = 0u64;
    for i in 0..n {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == n { b } else { a + (i + 1) as f64 * h };
        if set.flag(lo, hi) {
            flagged += 1;
        }
    }
    flagged as f64 * h.powf(alpha)
}

/// Gap-aligned flagged-cell sum at mesh `delta` (without the gamma weight).
///
/// Blocks are the intervals of the coarsest refinement depth whose width
/// fits the mesh, clipped to `[a, b]`. A block wider than the mesh (the
/// approximant's own intervals, or the merged full-interval case) is
/// subdivided uniformly; its subcells all sit inside a retained interval,
/// so they are all flagged.
fn gap_aligned_sum(set: &IntervalUnion, alpha: f64, a: f64, b: f64, delta: f64) -> f64 {
    let spec = set.spec();
    let support_len = spec.support().len();
    let r = spec.keep_ratio();
    let mut d_star = 0u32;
    while d_star < set.depth() && support_len * r.powi(d_star as i32) > delta * (1.0 + 1e-12) {
        d_star += 1;
    }
    let built;
    let blocks = if d_star == set.depth() {
        set
    } else {
        built = build_cantor(spec, d_star).expect("shallower rebuild of a valid spec");
        &built
    };

    let mut sum = 0.0;
    for iv in blocks.intervals() {
        let lo = iv.lo.max(a);
        let hi = iv.hi.min(b);
        if lo >= hi {
            continue;
        }
        // clipping can leave a piece inside a finer gap
        if !set.flag(lo, hi) {
            continue;
        }
        let w = hi - lo;
        // block widths are endpoint differences, so their rounding scales
        // with the endpoint ulp, not with the width; without this slack a
        // block a few ulps wide of the mesh would be spuriously split
        let slack = 8.0 * f64::EPSILON * hi.abs().max(lo.abs()).max(1.0);
        if w <= delta + slack {
            sum += w.powf(alpha);
        } else {
            let m = ((w - slack) / delta).ceil();
            sum += m * (w / m).powf(alpha);
        }
    }
    sum
}

/// Evaluates the coarse mass along a strictly decreasing mesh schedule and
/// returns the final estimate; `converged` is set when the last two values
/// agree to [`CONVERGENCE_RTOL`] relative.
pub fn mass_function(
    set: &IntervalUnion,
    alpha: f64,
    a: f64,
    b: f64,
    mesh_schedule: &[f64],
) -> Result<MassEstimate> {
    let values = mass_values(set, alpha, a, b, mesh_schedule)?;
    let last = *values.last().expect("schedule validated non-empty");
    let converged = values.len() >= 2 && {
        let prev = values[values.len() - 2];
        (last - prev).abs() <= CONVERGENCE_RTOL * last.abs().max(f64::MIN_POSITIVE)
    };
    Ok(MassEstimate {
        value: last,
        delta: *mesh_schedule.last().unwrap(),
        converged,
    })
}

/// Coarse-mass values along the schedule, in schedule order.
pub fn mass_values(
    set: &IntervalUnion,
    alpha: f64,
    a: f64,
    b: f64,
    mesh_schedule: &[f64],
) -> Result<Vec<f64>> {
    if mesh_schedule.is_empty() {
        return Err(Error::InvalidParameter(
            "mesh schedule must not be empty".into(),
        ));
    }
    for pair in mesh_schedule.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::InvalidParameter(
                "mesh schedule must be strictly decreasing".into(),
            ));
        }
    }
    mesh_schedule
        .iter()
        .map(|&d| Ok(coarse_mass(set, alpha, a, b, d, DEFAULT_SEARCH_BUDGET)?.value))
        .collect()
}

/// The natural mesh schedule of an approximant: support length times
/// `keep_ratio^j`, descending to the approximant's finest scale.
pub fn default_mesh_schedule(set: &IntervalUnion) -> Vec<f64> {
    let l = set.spec().support().len();
    let r = set.spec().keep_ratio();
    let steps = set.depth().max(4);
    (1..=steps).map(|j| l * r.powi(j as i32)).collect()
}

/// One probed alpha during the dimension bisection: the first and last mass
/// values along the mesh schedule and the resulting classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionProbe {
    pub alpha: f64,
    pub first_mass: f64,
    pub last_mass: f64,
    pub divergent: bool,
}

/// Gamma-dimension of the approximant on `[a, b]`: bisection on alpha for
/// the threshold where the mass function flips from divergent (values grow
/// along the mesh schedule) to vanishing, resolved to within `tol`.
pub fn gamma_dimension(set: &IntervalUnion, a: f64, b: f64, tol: f64) -> Result<f64> {
    Ok(gamma_dimension_trace(set, a, b, tol)?.0)
}

/// As [`gamma_dimension`], also returning the probe trace in evaluation
/// order (the mass-vs-alpha table behind the bisection).
pub fn gamma_dimension_trace(
    set: &IntervalUnion,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, Vec<DimensionProbe>)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let schedule = default_mesh_schedule(set);
    let mut probes = Vec::new();
    let classify = |alpha: f64, probes: &mut Vec<DimensionProbe>| -> Result<bool> {
        let values = mass_values(set, alpha, a, b, &schedule)?;
        let first = values[0];
        let last = *values.last().unwrap();
        if !first.is_finite() || !last.is_finite() {
            return Err(Error::Computation(format!(
                "non-finite mass at alpha = {alpha}"
            )));
        }
        let divergent = last > first * (1.0 + 1e-9);
        probes.push(DimensionProbe {
            alpha,
            first_mass: first,
            last_mass: last,
            divergent,
        });
        Ok(divergent)
    };

    let mut lo = DIMENSION_ALPHA_MIN;
    let mut hi = 1.0;
    if !classify(lo, &mut probes)? || classify(hi, &mut probes)? {
        return Err(Error::Computation(format!(
            "mass function does not bracket a divergent-to-vanishing transition on [{lo}, {hi}]"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if classify(mid, &mut probes)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), probes))
}

/// The integral staircase `S(x)`, evaluable through one of three backends
/// and odd-extended about the origin: `S(-x) = -S(x)`.
///
/// * `power_law`: the surrogate `sign(x) |x|^alpha`, with `S(x) = x` exactly
///   at `alpha = 1`.
/// * `cantor_analytic`: the classical Cantor-Lebesgue staircase of a
///   [`CantorSpec`], scaled so `S(c2) = normalization`.
/// * `numeric`: the mass function of a finite-depth approximant accumulated
///   from the left support endpoint, with the `Gamma(alpha+1)` weight.
#[derive(Debug, Clone)]
pub struct Staircase {
    backend: Backend,
    alpha: f64,
}

#[derive(Debug, Clone)]
enum Backend {
    PowerLaw,
    CantorAnalytic {
        spec: CantorSpec,
        normalization: f64,
    },
    Numeric {
        set: IntervalUnion,
        finest_mesh: f64,
    },
}

impl Staircase {
    pub fn power_law(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            backend: Backend::PowerLaw,
            alpha,
        })
    }

    /// Analytic Cantor staircase; `alpha` is the spec's similarity dimension.
    /// The odd extension requires a support that starts at or above 0.
    pub fn cantor_analytic(spec: CantorSpec, normalization: f64) -> Result<Self> {
        if !(normalization > 0.0) || !normalization.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "normalization must be positive and finite, got {normalization}"
            )));
        }
        if spec.support().lo < 0.0 {
            return Err(Error::InvalidParameter(
                "cantor_analytic staircase requires support with c1 >= 0 (odd extension is taken about the origin)".into(),
            ));
        }
        Ok(Self {
            alpha: spec.similarity_dimension(),
            backend: Backend::CantorAnalytic {
                spec,
                normalization,
            },
        })
    }

    /// Numeric staircase of a finite-depth approximant, evaluated at the
    /// finest mesh of the default schedule.
    pub fn numeric(set: IntervalUnion, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if set.spec().support().lo < 0.0 {
            return Err(Error::InvalidParameter(
                "numeric staircase requires support with c1 >= 0 (odd extension is taken about the origin)".into(),
            ));
        }
        let finest_mesh = *default_mesh_schedule(&set).last().unwrap();
        Ok(Self {
            backend: Backend::Numeric { set, finest_mesh },
            alpha,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `S(x)`; non-decreasing in `x`, with `S(0) = 0`.
    pub fn eval(&self, x: f64) -> f64 {
        if x == 0.0 {
            0.0
        } else if x < 0.0 {
            -self.eval_nonneg(-x)
        } else {
            self.eval_nonneg(x)
        }
    }

    fn eval_nonneg(&self, x: f64) -> f64 {
        match &self.backend {
            Backend::PowerLaw => {
                if self.alpha == 1.0 {
                    x
                } else {
                    x.powf(self.alpha)
                }
            }
            Backend::CantorAnalytic {
                spec,
                normalization,
            } => cantor_function(spec, x) * normalization,
            Backend::Numeric { set, finest_mesh } => {
                let c0 = set.spec().support().lo;
                if x <= c0 {
                    return 0.0;
                }
                let weight = gamma_fn(self.alpha + 1.0).expect("alpha + 1 lies in (1, 2]");
                weight * gap_aligned_sum(set, self.alpha, c0, x, *finest_mesh)
            }
        }
    }

    /// Some `y >= 0`-signed preimage with `S(y) = s`; plateau interiors map
    /// to a point of the plateau. Used by the F^alpha operators to step in
    /// staircase value rather than in x.
    pub(crate) fn invert(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 0.0;
        }
        if s < 0.0 {
            return -self.invert_nonneg(-s);
        }
        self.invert_nonneg(s)
    }

    fn invert_nonneg(&self, s: f64) -> f64 {
        match &self.backend {
            Backend::PowerLaw => {
                if self.alpha == 1.0 {
                    s
                } else {
                    s.powf(1.0 / self.alpha)
                }
            }
            Backend::CantorAnalytic { spec, .. } => self.bisect_preimage(s, spec.support().hi),
            Backend::Numeric { set, .. } => self.bisect_preimage(s, set.spec().support().hi),
        }
    }

    fn bisect_preimage(&self, s: f64, hi_support: f64) -> f64 {
        let mut lo = 0.0;
        let mut hi = hi_support.max(1.0) * (1.0 + 1e-9);
        if self.eval(hi) < s {
            // saturated staircase cannot reach the target
            return hi;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) < s {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// True when the staircase is exactly flat in a small neighborhood of
    /// `x`, i.e. `x` sits strictly inside a removed gap or beyond the
    /// support. The power-law surrogate is strictly increasing everywhere.
    pub(crate) fn plateau_at(&self, x: f64) -> bool {
        match &self.backend {
            Backend::PowerLaw => false,
            _ => {
                let eps = 1e-9 * (1.0 + x.abs());
                self.eval(x + eps) == self.eval(x - eps)
            }
        }
    }
}

/// Classical Cantor-Lebesgue function of `spec`, normalized to `[0, 1]`,
/// evaluated by descending the construction one digit at a time. Each
/// extracted digit rescales rounding error by 1/keep_ratio, so points with
/// long expansions resolve to about 1e-10 relative.
fn cantor_function(spec: &CantorSpec, x: f64) -> f64 {
    let sup = spec.support();
    let mut u = (x - sup.lo) / sup.len();
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let r = spec.keep_ratio();
    let mut value = 0.0;
    let mut mass = 1.0;
    // 64 halvings exhaust f64 resolution
    for _ in 0..64 {
        mass *= 0.5;
        if u < r {
            u /= r;
        } else if u > 1.0 - r {
            value += mass;
            u = (u - (1.0 - r)) / r;
        } else {
            // inside the removed gap: plateau value
            return value + mass;
        }
        if u <= 0.0 {
            return value;
        }
        if u >= 1.0 {
            return value + mass;
        }
    }
    value
}
