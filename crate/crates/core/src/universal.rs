//! The defining equation of the universal hypersurface family in the affine
//! chart, and points on it.
//!
//! The chart equation is `F = sum_{|alpha| <= d} a_alpha z^alpha`. The
//! parameter space is the affine coordinate space of all dehomogenized
//! coefficients; no normalization of `a_(0,...,0)` is imposed, so the radial
//! parameter direction stays available as a tangent field.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Assignment, PolyContext, SparsePoly, Variable};
use crate::scalar::{parse_rational, Scalar, ScalarMode};

/// Numeric membership tolerance for complex-mode points.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// `F` together with its context and parameter index set.
#[derive(Debug, Clone)]
pub struct UniversalEquation {
    ctx: PolyContext,
    f: SparsePoly,
}

/// Builds `F = sum a_alpha z^alpha` over exact rationals.
pub fn build_universal_equation(n: usize, d: usize) -> Result<UniversalEquation> {
    let ctx = PolyContext::chart(n, d, ScalarMode::Rational)?;
    let mut f = SparsePoly::zero(&ctx);
    for alpha in ctx.params().to_vec() {
        let mut factors = vec![(Variable::param(alpha.clone()), 1u32)];
        for (j, &e) in alpha.exponents().iter().enumerate() {
            if e > 0 {
                factors.push((Variable::z(j + 1), e));
            }
        }
        let term = SparsePoly::monomial_of(&ctx, &factors, Scalar::one(ScalarMode::Rational))?;
        f = f.add(&term)?;
    }
    Ok(UniversalEquation { ctx, f })
}

impl UniversalEquation {
    pub fn context(&self) -> &PolyContext {
        &self.ctx
    }

    pub fn polynomial(&self) -> &SparsePoly {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn d(&self) -> usize {
        self.ctx.d()
    }

    /// Number of parameter variables, `N_d + 1`.
    pub fn param_count(&self) -> usize {
        self.ctx.params().len()
    }

    /// The projective parameter dimension `N_d`.
    pub fn nd(&self) -> usize {
        self.param_count() - 1
    }

    /// True iff `F` vanishes at the assignment: exactly in rational mode,
    /// within [`MEMBERSHIP_TOL`] in complex mode.
    pub fn membership(&self, assign: &Assignment) -> Result<bool> {
        let value = match assign.context().mode() {
            ScalarMode::Rational => self.f.evaluate(assign)?,
            ScalarMode::Complex => self.f.to_complex().evaluate(assign)?,
        };
        Ok(match value {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Complex(c) => c.norm() < MEMBERSHIP_TOL,
        })
    }

    /// Solves the monic linear constraint for `a_(0,...,0)` given values for
    /// every other variable, producing a point that satisfies `F = 0` exactly.
    pub fn sample_point(
        &self,
        z_values: &[BigRational],
        a_nonzero: &[BigRational],
    ) -> Result<ChartPoint> {
        let n = self.n();
        let params = self.ctx.params();
        if z_values.len() != n || a_nonzero.len() != params.len() - 1 {
            return Err(Error::MissingAssignment(format!(
                "expected {} z-values and {} nonconstant parameter values",
                n,
                params.len() - 1
            )));
        }
        // a_0 = -sum_{alpha != 0} a_alpha z^alpha
        let mut acc = BigRational::zero();
        for (alpha, a_val) in params[1..].iter().zip(a_nonzero) {
            let mut term = a_val.clone();
            for (j, &e) in alpha.exponents().iter().enumerate() {
                for _ in 0..e {
                    term *= &z_values[j];
                }
            }
            acc += term;
        }
        let mut a = Vec::with_capacity(params.len());
        a.push(Scalar::Rational(-acc));
        a.extend(a_nonzero.iter().cloned().map(Scalar::Rational));
        let z = z_values.iter().cloned().map(Scalar::Rational).collect();
        ChartPoint::new(self, z, a)
    }
}

/// A full assignment of chart values lying on the hypersurface.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    ctx: PolyContext,
    z: Vec<Scalar>,
    a: Vec<Scalar>,
}

impl ChartPoint {
    /// Validates lengths, a uniform scalar mode, and membership.
    pub fn new(eq: &UniversalEquation, z: Vec<Scalar>, a: Vec<Scalar>) -> Result<Self> {
        let mode = z
            .first()
            .or_else(|| a.first())
            .map(Scalar::mode)
            .unwrap_or(ScalarMode::Rational);
        if z.iter().chain(&a).any(|s| s.mode() != mode) {
            return Err(Error::ModeMismatch);
        }
        let ctx = match mode {
            ScalarMode::Rational => eq.ctx.clone(),
            ScalarMode::Complex => eq.ctx.to_complex(),
        };
        if z.len() != ctx.n() || a.len() != ctx.params().len() {
            return Err(Error::MissingAssignment(format!(
                "expected {} z-values and {} parameter values",
                ctx.n(),
                ctx.params().len()
            )));
        }
        let point = ChartPoint { ctx, z, a };
        let assign = point.assignment();
        if !eq.membership(&assign)? {
            let residual = match assign.context().mode() {
                ScalarMode::Rational => eq.f.evaluate(&assign)?,
                ScalarMode::Complex => eq.f.to_complex().evaluate(&assign)?,
            };
            return Err(Error::NotOnHypersurface {
                residual: residual.render(),
            });
        }
        Ok(point)
    }

    pub fn context(&self) -> &PolyContext {
        &self.ctx
    }

    pub fn z_values(&self) -> &[Scalar] {
        &self.z
    }

    pub fn a_values(&self) -> &[Scalar] {
        &self.a
    }

    /// Value of one chart variable by canonical index.
    pub fn value_at(&self, idx: usize) -> &Scalar {
        if idx < self.ctx.n() {
            &self.z[idx]
        } else {
            &self.a[idx - self.ctx.n()]
        }
    }

    pub fn values(&self) -> Vec<Scalar> {
        self.z.iter().chain(&self.a).cloned().collect()
    }

    pub fn assignment(&self) -> Assignment {
        Assignment::full(&self.ctx, self.values()).expect("lengths validated")
    }

    /// The differential of `F` at this point: one scalar per chart variable
    /// in canonical order.
    pub fn differential(&self, eq: &UniversalEquation) -> Result<Vec<Scalar>> {
        let f = match self.ctx.mode() {
            ScalarMode::Rational => eq.f.clone(),
            ScalarMode::Complex => eq.f.to_complex(),
        };
        let assign = self.assignment();
        let mut out = Vec::with_capacity(self.ctx.total_vars());
        for v in self.ctx.variables() {
            out.push(f.differentiate(&v)?.evaluate(&assign)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut a = serde_json::Map::new();
        for (alpha, value) in self.ctx.params().iter().zip(&self.a) {
            a.insert(alpha.to_string(), serde_json::Value::String(value.render()));
        }
        serde_json::json!({
            "n": self.ctx.n(),
            "d": self.ctx.d(),
            "z": self.z.iter().map(|s| serde_json::Value::String(s.render())).collect::<Vec<_>>(),
            "a": serde_json::Value::Object(a),
        })
    }

    pub fn from_json(value: &serde_json::Value, eq: &UniversalEquation) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("chart point must be a JSON object".into()))?;
        let n = obj
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Json("missing field n".into()))? as usize;
        let d = obj
            .get("d")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Json("missing field d".into()))? as usize;
        if n != eq.n() || d != eq.d() {
            return Err(Error::ContextMismatch);
        }
        let z_arr = obj
            .get("z")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Json("missing array z".into()))?;
        let z = z_arr
            .iter()
            .map(scalar_from_json)
            .collect::<Result<Vec<_>>>()?;
        let a_obj = obj
            .get("a")
            .and_then(|v| v.as_object())
            .ok_or_else(|| Error::Json("missing object a".into()))?;
        let mut a = Vec::with_capacity(eq.param_count());
        for alpha in eq.ctx.params() {
            let key = alpha.to_string();
            let v = a_obj
                .get(&key)
                .ok_or_else(|| Error::Json(format!("missing parameter value {key}")))?;
            a.push(scalar_from_json(v)?);
        }
        ChartPoint::new(eq, z, a)
    }
}

fn scalar_from_json(value: &serde_json::Value) -> Result<Scalar> {
    let text = value
        .as_str()
        .ok_or_else(|| Error::Json("scalar values must be strings".into()))?;
    let trimmed = text.trim();
    if trimmed.starts_with('(') {
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Json(format!("bad complex literal {text:?}")))?;
        let (re, im) = inner
            .split_once(',')
            .ok_or_else(|| Error::Json(format!("bad complex literal {text:?}")))?;
        let re: f64 = re.trim().parse().map_err(|_| Error::Json(format!("bad float in {text:?}")))?;
        let im: f64 = im.trim().parse().map_err(|_| Error::Json(format!("bad float in {text:?}")))?;
        Ok(Scalar::Complex(num_complex::Complex64::new(re, im)))
    } else {
        Ok(Scalar::Rational(parse_rational(trimmed)?))
    }
}
