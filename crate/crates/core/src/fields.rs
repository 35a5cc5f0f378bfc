//! The two families of vector fields tangent to the chart hypersurface, with
//! exact tangency certificates.
//!
//! The basic fields are `V_{alpha,j} = d/da_alpha - z_j d/da_alphahat`, where
//! `alphahat` lowers the `j`-th entry of `alpha` by one; applying one to `F`
//! telescopes `z^alpha - z_j z^alphahat = 0`, so tangency is an exact
//! polynomial identity. The lifted fields extend a degree-at-most-one field
//! `V_0` on the geometric variables by parameter coefficients `v_beta` chosen
//! so every `z`-monomial coefficient of `V(F)` cancels. Since that identity
//! must hold for all parameter values, each `v_beta` is a polynomial of
//! degree one in the parameters rather than a number; fiberwise it
//! specializes to constants.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::poly::{PolyContext, SparsePoly, Variable};
use crate::scalar::{Scalar, ScalarMode};
use crate::universal::{ChartPoint, UniversalEquation};

/// A chart vector field `sum_v c_v d/dv` with polynomial coefficients.
/// Variables absent from the map have zero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    ctx: PolyContext,
    coeffs: BTreeMap<Variable, SparsePoly>,
}

impl VectorField {
    pub fn zero(ctx: &PolyContext) -> Self {
        VectorField {
            ctx: ctx.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn context(&self) -> &PolyContext {
        &self.ctx
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&Variable, &SparsePoly)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, v: &Variable) -> Option<&SparsePoly> {
        self.coeffs.get(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sets the coefficient of `d/dv`; zero polynomials are dropped.
    pub fn set(&mut self, v: Variable, coeff: SparsePoly) -> Result<()> {
        if coeff.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        self.ctx.var_index(&v)?;
        if coeff.is_zero() {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, coeff);
        }
        Ok(())
    }

    /// The derivation applied to a polynomial: `sum_v c_v dp/dv`, exact.
    pub fn apply(&self, p: &SparsePoly) -> Result<SparsePoly> {
        if p.context() != &self.ctx {
            if !p.context().same_shape(&self.ctx) {
                return Err(Error::ContextMismatch);
            }
            return Err(Error::ModeMismatch);
        }
        let mut out = SparsePoly::zero(&self.ctx);
        for (v, c) in &self.coeffs {
            out = out.add(&c.mul(&p.differentiate(v)?)?)?;
        }
        Ok(out)
    }

    /// Maximum total `z`-degree over the coefficients: the pole order of the
    /// meromorphic extension, i.e. the `O(1)`-twist needed globally.
    pub fn chart_degree(&self) -> u32 {
        self.coeffs.values().map(SparsePoly::z_degree).max().unwrap_or(0)
    }

    /// Componentwise evaluation at a point, ordered `z_1..z_n` then the
    /// parameters in enumeration order.
    pub fn evaluate(&self, point: &ChartPoint) -> Result<Vec<Scalar>> {
        if !point.context().same_shape(&self.ctx) {
            return Err(Error::ContextMismatch);
        }
        if point.context().mode() != self.ctx.mode() {
            return Err(Error::ModeMismatch);
        }
        let assign = point.assignment();
        let mut out = Vec::with_capacity(self.ctx.total_vars());
        for v in self.ctx.variables() {
            match self.coeffs.get(&v) {
                Some(c) => out.push(c.evaluate(&assign)?),
                None => out.push(Scalar::zero(self.ctx.mode())),
            }
        }
        Ok(out)
    }

    /// Evaluation of a rational-mode field at complex chart values.
    pub fn evaluate_complex(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = Vec::with_capacity(self.ctx.total_vars());
        for v in self.ctx.variables() {
            match self.coeffs.get(&v) {
                Some(c) => out.push(c.to_complex().evaluate_complex(values)?),
                None => out.push(Complex64::new(0.0, 0.0)),
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            let merged = match out.coeffs.get(v) {
                Some(existing) => existing.add(c)?,
                None => c.clone(),
            };
            out.set(v.clone(), merged)?;
        }
        Ok(out)
    }

    /// JSON map from variable descriptors to polynomial literals.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (v, c) in &self.coeffs {
            map.insert(v.to_string(), serde_json::Value::String(c.render()));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value, ctx: &PolyContext) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("vector field must be a JSON object".into()))?;
        let mut field = VectorField::zero(ctx);
        for (key, val) in obj {
            let v = crate::parse::parse_variable(key, ctx)?;
            let text = val
                .as_str()
                .ok_or_else(|| Error::Json("coefficients must be literal strings".into()))?;
            field.set(v, crate::parse::parse_poly(text, ctx)?)?;
        }
        Ok(field)
    }
}

/// `V_{alpha,j}`: `+1` on `d/da_alpha` and `-z_j` on the decremented index.
pub fn build_basic_field(
    eq: &UniversalEquation,
    alpha: &MultiIndex,
    j: usize,
) -> Result<VectorField> {
    let ctx = eq.context();
    ctx.var_index(&Variable::param(alpha.clone()))?;
    let hat = alpha.decrement(j)?;
    let mut field = VectorField::zero(ctx);
    field.set(Variable::param(alpha.clone()), SparsePoly::one(ctx))?;
    let minus_zj = SparsePoly::variable(ctx, &Variable::z(j))?.neg();
    field.set(Variable::param(hat), minus_zj)?;
    Ok(field)
}

/// True iff `V(F)` is the zero polynomial: tangency as an exact identity in
/// all chart variables.
pub fn tangency_check(field: &VectorField, eq: &UniversalEquation) -> Result<bool> {
    if eq.context().mode() != ScalarMode::Rational {
        return Err(Error::ModeMismatch);
    }
    Ok(field.apply(eq.polynomial())?.is_zero())
}

/// A field `V_0 = sum_j v_j d/dz_j` on the geometric variables with
/// `v_j = v0^(j) + sum_k vk^(j) z_k`: the `n(n+1)` free coefficients of the
/// lifting construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFieldSpec {
    n: usize,
    /// `constant[j-1]` is `v0^(j)`.
    constant: Vec<BigRational>,
    /// `linear[j-1][k-1]` is `vk^(j)`.
    linear: Vec<Vec<BigRational>>,
}

impl LinearFieldSpec {
    pub fn zero(n: usize) -> Self {
        LinearFieldSpec {
            n,
            constant: vec![BigRational::zero(); n],
            linear: vec![vec![BigRational::zero(); n]; n],
        }
    }

    /// Basis spec with `v0^(j) = 1`.
    pub fn basis_constant(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::VariableOutOfRange { j, n });
        }
        let mut s = Self::zero(n);
        s.constant[j - 1] = BigRational::from_integer(1.into());
        Ok(s)
    }

    /// Basis spec with `vk^(j) = 1`.
    pub fn basis_linear(n: usize, j: usize, k: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::VariableOutOfRange { j, n });
        }
        if k == 0 || k > n {
            return Err(Error::VariableOutOfRange { j: k, n });
        }
        let mut s = Self::zero(n);
        s.linear[j - 1][k - 1] = BigRational::from_integer(1.into());
        Ok(s)
    }

    /// All `n(n+1)` basis specs in canonical order: for each `j`, the
    /// constant spec then the linear specs `k = 1..n`.
    pub fn basis(n: usize) -> Vec<LinearFieldSpec> {
        let mut out = Vec::with_capacity(n * (n + 1));
        for j in 1..=n {
            out.push(Self::basis_constant(n, j).expect("j in range"));
            for k in 1..=n {
                out.push(Self::basis_linear(n, j, k).expect("indices in range"));
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constant_part(&self, j: usize) -> &BigRational {
        &self.constant[j - 1]
    }

    pub fn linear_part(&self, j: usize, k: usize) -> &BigRational {
        &self.linear[j - 1][k - 1]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for j in 0..self.n {
            out.constant[j] += &other.constant[j];
            for k in 0..self.n {
                out.linear[j][k] += &other.linear[j][k];
            }
        }
        Ok(out)
    }

    /// Reads a spec off `n` coefficient polynomials for `d/dz_1..d/dz_n`;
    /// rejects anything of `z`-degree above one or involving parameters.
    pub fn from_polys(polys: &[SparsePoly]) -> Result<Self> {
        let n = polys.len();
        if n == 0 {
            return Err(Error::InvalidDimension("empty coefficient list".into()));
        }
        let mut spec = Self::zero(n);
        for (j, p) in polys.iter().enumerate() {
            if p.context().mode() != ScalarMode::Rational {
                return Err(Error::ModeMismatch);
            }
            if p.param_degree() > 0 || p.z_degree() > 1 {
                return Err(Error::DegreeTooHigh {
                    found: p.total_degree(),
                    limit: 1,
                });
            }
            for (mono, coeff) in p.terms() {
                let r = coeff.as_rational()?.clone();
                if mono.is_constant() {
                    spec.constant[j] = r;
                } else {
                    let k = mono
                        .exponents()
                        .iter()
                        .position(|&e| e == 1)
                        .expect("degree-one monomial");
                    if k >= n {
                        return Err(Error::UnknownVariable(format!("z{}", k + 1)));
                    }
                    spec.linear[j][k] = r;
                }
            }
        }
        Ok(spec)
    }

    /// The geometric part as a vector field in the chart context.
    pub fn geometric_field(&self, ctx: &PolyContext) -> Result<VectorField> {
        if ctx.n() != self.n {
            return Err(Error::ContextMismatch);
        }
        let mut field = VectorField::zero(ctx);
        for j in 1..=self.n {
            let mut vj = SparsePoly::constant(ctx, Scalar::Rational(self.constant[j - 1].clone()))?;
            for k in 1..=self.n {
                let zk = SparsePoly::variable(ctx, &Variable::z(k))?;
                vj = vj.add(&zk.scale(&Scalar::Rational(self.linear[j - 1][k - 1].clone()))?)?;
            }
            field.set(Variable::z(j), vj)?;
        }
        Ok(field)
    }
}

/// Lifts `V_0` to a field tangent to the family: `V = sum_beta v_beta
/// d/da_beta + V_0` with `v_beta = -(coefficient of z^beta in V_0(F))`.
pub fn lift_field(spec: &LinearFieldSpec, eq: &UniversalEquation) -> Result<VectorField> {
    let ctx = eq.context();
    let v0 = spec.geometric_field(ctx)?;
    // V_0(F) = sum_alpha a_alpha V_0(z^alpha); cancel it monomial by monomial.
    let g = v0.apply(eq.polynomial())?;
    let mut field = v0;
    for beta in ctx.params() {
        let v_beta = g.coefficient_of_z(beta)?.neg();
        field.set(Variable::param(beta.clone()), v_beta)?;
    }
    Ok(field)
}
