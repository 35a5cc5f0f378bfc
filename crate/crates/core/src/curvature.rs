//! Numeric machinery for the negative-curvature argument: polynomial disc
//! maps into the family, Jacobian wedge sections, the Poincare volume form
//! and its Laplacian, the vector-norm inequality chain, and the
//! Ahlfors-Schwarz comparison.
//!
//! Laplacian convention: `lap = 4 sum_i d^2/dw_i dwbar_i`, the trace against
//! the flat Kaehler form up to the constant 4. Every inequality constant in
//! this module is reported against that convention.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::generation::WedgeSelection;
use crate::multiindex::dimension_count_usize;
use crate::poly::{PolyContext, SparsePoly, Variable};
use crate::scalar::{Scalar, ScalarMode};
use crate::universal::{build_universal_equation, UniversalEquation};

/// Relative slack for floating comparisons of analytically-exact
/// (in)equalities: a few hundred ulps, far below every stated tolerance.
pub const FLOAT_SLACK: f64 = 1e-9;

/// Relative margin for the finite-difference hypothesis check in the
/// Ahlfors-Schwarz comparison; the O(h^2) stencil error sits well below it.
pub const HYPOTHESIS_SLACK: f64 = 1e-3;

/// Finite and strictly positive (rejects NaN).
fn positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

// ---------------------------------------------------------------------------
// complex Gram determinants

/// Hermitian Gram matrix `G_ij = <v_i, v_j>`.
fn hermitian_gram(vectors: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let s = vectors.len();
    let mut g = vec![vec![Complex64::new(0.0, 0.0); s]; s];
    for i in 0..s {
        for j in 0..s {
            g[i][j] = vectors[i]
                .iter()
                .zip(&vectors[j])
                .map(|(a, b)| a * b.conj())
                .sum();
        }
    }
    g
}

fn det_lu(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| {
                m[a][col]
                    .norm()
                    .partial_cmp(&m[b][col].norm())
                    .expect("norms are finite")
            })
            .expect("nonempty range");
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for j in col..n {
                let sub = factor * m[col][j];
                m[row][j] -= sub;
            }
        }
    }
    det
}

/// `||v_1 ^ ... ^ v_s||` under the flat metric: the square root of the Gram
/// determinant. The determinant of a Hermitian positive semidefinite matrix
/// is real; tiny negative rounding is clamped.
pub fn wedge_norm(vectors: &[Vec<Complex64>]) -> f64 {
    wedge_norm_squared(vectors).sqrt()
}

fn wedge_norm_squared(vectors: &[Vec<Complex64>]) -> f64 {
    if vectors.is_empty() {
        return 1.0;
    }
    det_lu(hermitian_gram(vectors)).re.max(0.0)
}

// ---------------------------------------------------------------------------
// polynomial disc maps

/// A polynomial map from a polydisc `B(delta0)^m`, `m = 1 + N_d`, into the
/// chart of the universal family: one complex component polynomial in the
/// domain variables per chart variable.
#[derive(Debug, Clone)]
pub struct PolyMap {
    n: usize,
    d: usize,
    domain: PolyContext,
    components: Vec<SparsePoly>,
    delta0: f64,
}

/// The tuple of partial-derivative vectors of a map at a point, with the
/// Gram-determinant norm of their wedge.
#[derive(Debug, Clone)]
pub struct JacobianSection {
    /// One vector per domain direction, each over the chart variables.
    pub partials: Vec<Vec<Complex64>>,
    pub norm: f64,
}

impl PolyMap {
    pub fn new(n: usize, d: usize, components: Vec<SparsePoly>, delta0: f64) -> Result<Self> {
        let chart = PolyContext::chart(n, d, ScalarMode::Complex)?;
        let m = 1 + dimension_count_usize(n, d)?;
        let domain = PolyContext::plain(m, ScalarMode::Complex)?;
        if components.len() != chart.total_vars() {
            return Err(Error::InvalidDimension(format!(
                "expected {} components, got {}",
                chart.total_vars(),
                components.len()
            )));
        }
        for c in &components {
            if !c.context().same_shape(&domain) {
                return Err(Error::ContextMismatch);
            }
            if c.context().mode() != ScalarMode::Complex {
                return Err(Error::ModeMismatch);
            }
        }
        if !positive(delta0) {
            return Err(Error::InvalidDimension("delta0 must be positive".into()));
        }
        Ok(PolyMap {
            n,
            d,
            domain,
            components,
            delta0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Domain dimension `m = 1 + N_d`.
    pub fn m(&self) -> usize {
        self.domain.total_vars()
    }

    pub fn nd(&self) -> usize {
        self.m() - 1
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    pub fn components(&self) -> &[SparsePoly] {
        &self.components
    }

    pub fn domain_context(&self) -> &PolyContext {
        &self.domain
    }

    /// Image chart values at a domain point.
    pub fn evaluate(&self, w: &[Complex64]) -> Result<Vec<Complex64>> {
        self.components
            .iter()
            .map(|c| c.evaluate_complex(w))
            .collect()
    }

    /// `Phi_k(z, xi) = Phi(z k^{N_d}, xi_1/k, ..., xi_{N_d}/k)` on the
    /// polydisc of radius `delta0 * k` in every factor.
    pub fn reparametrize(&self, k: u32) -> Result<PolyMap> {
        if k == 0 {
            return Err(Error::InvalidDimension("k must be at least 1".into()));
        }
        let kf = k as f64;
        let z_factor = Scalar::Complex(Complex64::new(kf.powi(self.nd() as i32), 0.0));
        let xi_factor = Scalar::Complex(Complex64::new(1.0 / kf, 0.0));
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let mut out = c.scale_var(&Variable::z(1), &z_factor)?;
            for i in 2..=self.m() {
                out = out.scale_var(&Variable::z(i), &xi_factor)?;
            }
            components.push(out);
        }
        Ok(PolyMap {
            n: self.n,
            d: self.d,
            domain: self.domain.clone(),
            components,
            delta0: self.delta0 * kf,
        })
    }

    /// The `1 + N_d` partial-derivative vectors at `w` and the norm of their
    /// top wedge.
    pub fn jacobian(&self, w: &[Complex64]) -> Result<JacobianSection> {
        let mut partials = Vec::with_capacity(self.m());
        for i in 1..=self.m() {
            let v = Variable::z(i);
            let mut column = Vec::with_capacity(self.components.len());
            for c in &self.components {
                column.push(c.differentiate(&v)?.evaluate_complex(w)?);
            }
            partials.push(column);
        }
        let norm = wedge_norm(&partials);
        Ok(JacobianSection { partials, norm })
    }

    /// Symbolic composition `F o Phi` as a polynomial in the domain
    /// variables: identically zero exactly when the image lies on the
    /// family.
    pub fn compose_equation(&self, eq: &UniversalEquation) -> Result<SparsePoly> {
        if eq.n() != self.n || eq.d() != self.d {
            return Err(Error::ContextMismatch);
        }
        eq.polynomial().to_complex().substitute(&self.components)
    }

    /// `|F(Phi(w))|` at one domain point.
    pub fn membership_residual(&self, eq: &UniversalEquation, w: &[Complex64]) -> Result<f64> {
        if eq.n() != self.n || eq.d() != self.d {
            return Err(Error::ContextMismatch);
        }
        let values = self.evaluate(w)?;
        Ok(eq.polynomial().to_complex().evaluate_complex(&values)?.norm())
    }
}

/// An explicit maximal-rank polynomial model into the `n = 2`, `d = 1`
/// family (hyperplanes), where such maps exist: `a = (1, xi_1, 1 + xi_2)`,
/// `z_1 = z`, and `z_2` the truncated expansion of `-(1 + xi_1 z)/(1 + xi_2)`
/// to order 11 in `xi_2`. The exact composition residual is
/// `(1 + z xi_1) xi_2^12`, below 1.1e-12 in sup norm on the radius-0.1
/// polydisc.
pub fn witness_map_d1() -> PolyMap {
    let n = 2;
    let d = 1;
    let m = 3; // (z, xi_1, xi_2)
    let domain = PolyContext::plain(m, ScalarMode::Complex).expect("m >= 1");
    let one = |v: f64| Scalar::Complex(Complex64::new(v, 0.0));

    let z = SparsePoly::variable(&domain, &Variable::z(1)).expect("in range");
    let xi1 = SparsePoly::variable(&domain, &Variable::z(2)).expect("in range");
    let xi2 = SparsePoly::variable(&domain, &Variable::z(3)).expect("in range");

    // truncated geometric series for 1/(1 + xi_2)
    let mut series = SparsePoly::zero(&domain);
    for j in 0..=11u32 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = xi2
            .pow(j)
            .expect("small power")
            .scale(&one(sign))
            .expect("complex mode");
        series = series.add(&term).expect("same context");
    }
    let one_plus_z_xi1 = SparsePoly::one(&domain)
        .add(&z.mul(&xi1).expect("same context"))
        .expect("same context");
    let z2 = one_plus_z_xi1.mul(&series).expect("same context").neg();

    let components = vec![
        z.clone(),                                                  // z_1
        z2,                                                         // z_2
        SparsePoly::one(&domain),                                   // a_(0,0)
        xi1.clone(),                                                // a_(1,0)
        SparsePoly::one(&domain).add(&xi2).expect("same context"),  // a_(0,1)
    ];
    PolyMap::new(n, d, components, 0.1).expect("witness components are well-formed")
}

// ---------------------------------------------------------------------------
// Poincare volume form

fn poincare_factors(w: &[Complex64], k: u32, delta0: f64) -> Result<Vec<f64>> {
    if k == 0 || !positive(delta0) || w.is_empty() {
        return Err(Error::InvalidDimension(
            "need k >= 1, delta0 > 0 and a nonempty point".into(),
        ));
    }
    let r2 = (delta0 * k as f64) * (delta0 * k as f64);
    w.iter()
        .map(|wi| {
            let u = 1.0 - wi.norm_sqr() / r2;
            if u <= 0.0 {
                Err(Error::OutsideDomain)
            } else {
                Ok(u)
            }
        })
        .collect()
}

/// `psi_k(w) = prod_i (1 - |w_i|^2/(delta0 k)^2)^{-2}` on the polydisc of
/// radius `delta0 k`; at least 1, equal to 1 only at the origin, and
/// divergent toward the boundary.
pub fn poincare_volume(w: &[Complex64], k: u32, delta0: f64) -> Result<f64> {
    Ok(poincare_factors(w, k, delta0)?
        .into_iter()
        .map(|u| 1.0 / (u * u))
        .product())
}

/// Closed form of `lap log psi_k = sum_i 8 / ((delta0 k)^2 (1 - |w_i|^2 /
/// (delta0 k)^2)^2)`, so that `lap log psi_k <= (8m/delta0^2) k^{-2} psi_k`
/// with equality exactly at the origin.
pub fn poincare_laplacian_trace(w: &[Complex64], k: u32, delta0: f64) -> Result<f64> {
    let r2 = (delta0 * k as f64) * (delta0 * k as f64);
    Ok(poincare_factors(w, k, delta0)?
        .into_iter()
        .map(|u| 8.0 / (r2 * u * u))
        .sum())
}

/// One audited sample of the Poincare machinery at a point.
#[derive(Debug, Clone)]
pub struct PoincareSample {
    pub w: Vec<Complex64>,
    pub k: u32,
    pub delta0: f64,
    pub psi: f64,
    pub trace_closed: f64,
    pub trace_fd: f64,
}

impl PoincareSample {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "w": self.w.iter().map(|c| serde_json::json!([c.re, c.im])).collect::<Vec<_>>(),
            "k": self.k,
            "delta0": self.delta0,
            "psi": self.psi,
            "trace_closed": self.trace_closed,
            "trace_fd": self.trace_fd,
        })
    }
}

/// Audits `count` random interior points: closed-form trace against the
/// finite-difference oracle. Points stay within `fraction` of the radius.
pub fn poincare_samples(
    m: usize,
    k: u32,
    delta0: f64,
    fraction: f64,
    count: usize,
    rng: &mut impl rand::Rng,
) -> Result<Vec<PoincareSample>> {
    let radius = delta0 * k as f64;
    let h = 1e-4 * radius;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let w = crate::sampling::random_interior(m, radius, fraction, rng);
        let psi = poincare_volume(&w, k, delta0)?;
        let trace_closed = poincare_laplacian_trace(&w, k, delta0)?;
        let log_psi = |p: &[Complex64]| match poincare_volume(p, k, delta0) {
            Ok(v) => v.ln(),
            Err(_) => f64::NAN,
        };
        let trace_fd = fd_laplacian(&log_psi, &w, h)?;
        out.push(PoincareSample {
            w,
            k,
            delta0,
            psi,
            trace_closed,
            trace_fd,
        });
    }
    Ok(out)
}

/// Central second differences over all `2m` real coordinates, `O(h^2)`
/// accurate for smooth samplers. Errors out if the stencil leaves the
/// sampler's domain (detected through non-finite samples).
pub fn fd_laplacian(f: &dyn Fn(&[Complex64]) -> f64, w: &[Complex64], h: f64) -> Result<f64> {
    if !positive(h) {
        return Err(Error::InvalidDimension("step h must be positive".into()));
    }
    let center = f(w);
    if !center.is_finite() {
        return Err(Error::OutsideDomain);
    }
    let mut acc = 0.0;
    let mut shifted = w.to_vec();
    for i in 0..w.len() {
        for dir in [Complex64::new(h, 0.0), Complex64::new(0.0, h)] {
            shifted[i] = w[i] + dir;
            let plus = f(&shifted);
            shifted[i] = w[i] - dir;
            let minus = f(&shifted);
            shifted[i] = w[i];
            if !plus.is_finite() || !minus.is_finite() {
                return Err(Error::OutsideDomain);
            }
            acc += (plus - 2.0 * center + minus) / (h * h);
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// vector-norm inequalities

/// The two inequalities `||W_1 ^ ... ^ W_s|| <= prod ||W_i|| <= s^{-s}
/// (sum ||W_i||)^s`, checked with Gram-determinant wedge norms.
#[derive(Debug, Clone)]
pub struct WedgeNormReport {
    pub wedge_norm: f64,
    pub norm_product: f64,
    pub amgm_bound: f64,
    pub hadamard_ok: bool,
    pub amgm_ok: bool,
    /// `wedge_norm / norm_product` (0 when both vanish).
    pub hadamard_ratio: f64,
    /// `norm_product / amgm_bound` (0 when both vanish).
    pub amgm_ratio: f64,
}

impl WedgeNormReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "wedge_norm": self.wedge_norm,
            "norm_product": self.norm_product,
            "amgm_bound": self.amgm_bound,
            "hadamard_ok": self.hadamard_ok,
            "amgm_ok": self.amgm_ok,
            "hadamard_ratio": self.hadamard_ratio,
            "amgm_ratio": self.amgm_ratio,
        })
    }
}

pub fn wedge_norm_inequalities(vectors: &[Vec<Complex64>]) -> Result<WedgeNormReport> {
    if vectors.is_empty() {
        return Err(Error::InvalidDimension("need at least one vector".into()));
    }
    let dim = vectors[0].len();
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::InvalidDimension(
            "vectors must share one dimension".into(),
        ));
    }
    if vectors.iter().flatten().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::OutsideDomain);
    }
    let s = vectors.len();
    let wedge = wedge_norm(vectors);
    let norms: Vec<f64> = vectors
        .iter()
        .map(|v| v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt())
        .collect();
    let norm_product: f64 = norms.iter().product();
    let mean = norms.iter().sum::<f64>() / s as f64;
    let amgm_bound = mean.powi(s as i32);
    let ratio = |num: f64, den: f64| if den == 0.0 { 0.0 } else { num / den };
    Ok(WedgeNormReport {
        wedge_norm: wedge,
        norm_product,
        amgm_bound,
        hadamard_ok: wedge <= norm_product * (1.0 + FLOAT_SLACK) + f64::MIN_POSITIVE,
        amgm_ok: norm_product <= amgm_bound * (1.0 + FLOAT_SLACK) + f64::MIN_POSITIVE,
        hadamard_ratio: ratio(wedge, norm_product),
        amgm_ratio: ratio(norm_product, amgm_bound),
    })
}

// ---------------------------------------------------------------------------
// the section norm f_k and the Ahlfors-Schwarz comparison

/// `f(w) = (||J_Phi(w) ^ V_1(Phi(w)) ^ ... ^ V_{n-2}(Phi(w))||^2 *
/// weight(Phi(w)))^{1/(N_d+1)}`: the squared Gram norm of the wedge of the
/// Jacobian partials with the selected fields, times the metric weight,
/// raised to the reciprocal domain dimension.
pub fn section_norm_f(
    map: &PolyMap,
    weight: &dyn Fn(&[Complex64]) -> f64,
    selection: &WedgeSelection,
    w: &[Complex64],
) -> Result<f64> {
    if !selection.wedge_nonzero {
        return Err(Error::DegenerateSelection);
    }
    let jac = map.jacobian(w)?;
    let values = map.evaluate(w)?;
    let mut vectors = jac.partials;
    if !selection.chosen.is_empty() {
        let eq = build_universal_equation(map.n(), map.d())?;
        for descriptor in &selection.chosen {
            let field = descriptor.materialize(&eq)?;
            vectors.push(field.evaluate_complex(&values)?);
        }
    }
    let det = wedge_norm_squared(&vectors);
    let wgt = weight(&values);
    if !positive(wgt) {
        return Err(Error::OutsideDomain);
    }
    let exponent = 1.0 / (map.nd() as f64 + 1.0);
    Ok((det * wgt).powf(exponent))
}

/// Outcome of the maximum-principle comparison `f <= (C'/C) k^{-2} psi_k`
/// over a grid, `C' = 8m/delta0^2` from the Poincare trace bound.
#[derive(Debug, Clone)]
pub struct AhlforsReport {
    pub sup_ratio: f64,
    /// `(C'/C) k^{-2}`, the proved ceiling for `f/psi_k`.
    pub bound_value: f64,
    pub bound_ok: bool,
    pub grid: usize,
    pub worst_point: Vec<(f64, f64)>,
}

impl AhlforsReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sup_ratio": self.sup_ratio,
            "bound_value": self.bound_value,
            "bound_ok": self.bound_ok,
            "grid": self.grid,
            "worst_point": self.worst_point.iter().map(|(re, im)| serde_json::json!([re, im])).collect::<Vec<_>>(),
        })
    }
}

/// Verifies `lap log f >= c f` by finite differences over the grid (an error
/// is raised when it fails, never ignored), then computes `sup f/psi_k` and
/// checks the comparison bound at every grid point. The grid covers the
/// polydisc of radius `delta0 k` in `m` complex variables, excluding a 1%
/// boundary margin.
pub fn ahlfors_schwarz_compare(
    f: &dyn Fn(&[Complex64]) -> f64,
    c: f64,
    k: u32,
    delta0: f64,
    m: usize,
    grid: usize,
) -> Result<AhlforsReport> {
    if !positive(c) || k == 0 || !positive(delta0) || m == 0 || grid < 2 {
        return Err(Error::InvalidDimension(
            "need c > 0, k >= 1, delta0 > 0, m >= 1 and grid >= 2".into(),
        ));
    }
    let radius = delta0 * k as f64;
    let limit = 0.99 * radius;
    let h = 1e-4 * radius;

    let axis: Vec<f64> = (0..grid)
        .map(|i| -limit + 2.0 * limit * i as f64 / (grid - 1) as f64)
        .collect();

    let mut sup_ratio = f64::NEG_INFINITY;
    let mut worst = vec![(0.0, 0.0); m];
    let mut bound_ok = true;
    let bound_value = (8.0 * m as f64 / (delta0 * delta0)) / c / (k as f64 * k as f64);

    let mut point = vec![Complex64::new(0.0, 0.0); m];
    let mut index = vec![0usize; 2 * m];
    loop {
        for i in 0..m {
            point[i] = Complex64::new(axis[index[2 * i]], axis[index[2 * i + 1]]);
        }
        if point.iter().all(|wi| wi.norm() <= limit) {
            let fx = f(&point);
            if !fx.is_finite() {
                return Err(Error::OutsideDomain);
            }
            // hypothesis lap log f >= c f, within the stencil margin
            if point.iter().all(|wi| wi.norm() + 2.0 * h < radius) {
                let logf = |p: &[Complex64]| {
                    let v = f(p);
                    if v > 0.0 {
                        v.ln()
                    } else {
                        f64::NAN
                    }
                };
                let lap = fd_laplacian(&logf, &point, h)?;
                if lap < c * fx * (1.0 - HYPOTHESIS_SLACK) {
                    return Err(Error::HypothesisFailed {
                        point: point.iter().map(|w| (w.re, w.im)).collect(),
                        lhs: lap,
                        rhs: c * fx,
                    });
                }
            }
            let psi = poincare_volume(&point, k, delta0)?;
            let ratio = fx / psi;
            if ratio > sup_ratio {
                sup_ratio = ratio;
                worst = point.iter().map(|w| (w.re, w.im)).collect();
            }
            if ratio > bound_value * (1.0 + FLOAT_SLACK) {
                bound_ok = false;
            }
        }
        // odometer over the 2m real axes
        let mut carry = 0;
        loop {
            index[carry] += 1;
            if index[carry] < grid {
                break;
            }
            index[carry] = 0;
            carry += 1;
            if carry == 2 * m {
                return Ok(AhlforsReport {
                    sup_ratio,
                    bound_value,
                    bound_ok,
                    grid,
                    worst_point: worst,
                });
            }
        }
    }
}

/// Fiberwise degree of `K_X(2-n) = O(d - n - 1 + 2 - n)` on a degree-`d`
/// hypersurface in projective `n`-space: `d - 2n + 1`, positive exactly when
/// `d >= 2n`.
pub fn twist_degree(n: u32, d: u32) -> Result<i64> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidDimension(format!(
            "twist_degree requires n >= 2 and d >= 1, got n={n}, d={d}"
        )));
    }
    Ok(d as i64 - 2 * n as i64 + 1)
}
