//! Sparse multivariate polynomials over the two scalar modes.
//!
//! A context fixes the variable universe. Chart contexts carry the geometric
//! variables `z_1..z_n` followed by one parameter variable `a_alpha` per
//! multi-index with `|alpha| <= d`, in canonical enumeration order. Plain
//! contexts carry geometric variables only and serve as polynomial domains
//! for disc maps. Terms are kept in a canonical graded order and zero
//! coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::multiindex::{enumerate_multiindices, grlex_cmp, EnumMode, MultiIndex};
use crate::scalar::{Scalar, ScalarMode};

/// A chart variable: either `z_j` (1-based) or a coefficient `a_alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Variable {
    Geometric(usize),
    Parameter(MultiIndex),
}

impl Variable {
    pub fn z(j: usize) -> Self {
        Variable::Geometric(j)
    }

    pub fn param(alpha: MultiIndex) -> Self {
        Variable::Parameter(alpha)
    }
}

impl Ord for Variable {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Variable::Geometric(a), Variable::Geometric(b)) => a.cmp(b),
            (Variable::Geometric(_), Variable::Parameter(_)) => Ordering::Less,
            (Variable::Parameter(_), Variable::Geometric(_)) => Ordering::Greater,
            (Variable::Parameter(a), Variable::Parameter(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Variable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Geometric(j) => write!(f, "z{j}"),
            Variable::Parameter(alpha) => {
                write!(f, "a(")?;
                for (i, e) in alpha.exponents().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContextKind {
    /// `z_1..z_n` plus all parameters `a_alpha`, `|alpha| <= d`.
    Chart,
    /// Geometric variables only.
    Plain,
}

#[derive(Debug)]
struct ContextInner {
    kind: ContextKind,
    n: usize,
    d: usize,
    mode: ScalarMode,
    params: Vec<MultiIndex>,
    param_pos: BTreeMap<MultiIndex, usize>,
}

/// Shared, immutable variable universe for polynomials.
#[derive(Debug, Clone)]
pub struct PolyContext {
    inner: Arc<ContextInner>,
}

impl PartialEq for PolyContext {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other) && self.mode() == other.mode()
    }
}

impl Eq for PolyContext {}

impl PolyContext {
    pub fn chart(n: usize, d: usize, mode: ScalarMode) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidDimension(format!(
                "chart context requires n >= 1 and d >= 1, got n={n}, d={d}"
            )));
        }
        let params = enumerate_multiindices(n, d, EnumMode::AtMostDegree)?;
        let param_pos = params
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Ok(PolyContext {
            inner: Arc::new(ContextInner {
                kind: ContextKind::Chart,
                n,
                d,
                mode,
                params,
                param_pos,
            }),
        })
    }

    pub fn plain(nvars: usize, mode: ScalarMode) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidDimension(
                "plain context requires at least one variable".into(),
            ));
        }
        Ok(PolyContext {
            inner: Arc::new(ContextInner {
                kind: ContextKind::Plain,
                n: nvars,
                d: 0,
                mode,
                params: Vec::new(),
                param_pos: BTreeMap::new(),
            }),
        })
    }

    pub fn kind(&self) -> ContextKind {
        self.inner.kind
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn d(&self) -> usize {
        self.inner.d
    }

    pub fn mode(&self) -> ScalarMode {
        self.inner.mode
    }

    pub fn params(&self) -> &[MultiIndex] {
        &self.inner.params
    }

    pub fn total_vars(&self) -> usize {
        self.inner.n + self.inner.params.len()
    }

    /// Same variable universe, mode ignored.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.inner.kind == other.inner.kind
            && self.inner.n == other.inner.n
            && self.inner.d == other.inner.d
    }

    /// The same universe in complex mode.
    pub fn to_complex(&self) -> Self {
        if self.mode() == ScalarMode::Complex {
            return self.clone();
        }
        match self.inner.kind {
            ContextKind::Chart => Self::chart(self.inner.n, self.inner.d, ScalarMode::Complex)
                .expect("valid chart context"),
            ContextKind::Plain => {
                Self::plain(self.inner.n, ScalarMode::Complex).expect("valid plain context")
            }
        }
    }

    /// Canonical position of a variable: `z_1..z_n` first, then parameters
    /// in enumeration order.
    pub fn var_index(&self, v: &Variable) -> Result<usize> {
        match v {
            Variable::Geometric(j) => {
                if *j == 0 || *j > self.inner.n {
                    return Err(Error::UnknownVariable(v.to_string()));
                }
                Ok(*j - 1)
            }
            Variable::Parameter(alpha) => {
                if alpha.len() != self.inner.n {
                    return Err(Error::UnknownVariable(v.to_string()));
                }
                match self.inner.param_pos.get(alpha) {
                    Some(i) => Ok(self.inner.n + i),
                    None => Err(Error::UnknownVariable(v.to_string())),
                }
            }
        }
    }

    pub fn var_at(&self, idx: usize) -> Variable {
        if idx < self.inner.n {
            Variable::Geometric(idx + 1)
        } else {
            Variable::Parameter(self.inner.params[idx - self.inner.n].clone())
        }
    }

    /// All variables in canonical order.
    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        (0..self.total_vars()).map(|i| self.var_at(i))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if !self.same_shape(other) {
            return Err(Error::ContextMismatch);
        }
        if self.mode() != other.mode() {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }
}

/// Exponent vector over the full variable set of a context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial(vec![0; width])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial: canonical term map from monomials to nonzero scalars.
#[derive(Debug, Clone)]
pub struct SparsePoly {
    ctx: PolyContext,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl SparsePoly {
    pub fn zero(ctx: &PolyContext) -> Self {
        SparsePoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &PolyContext, value: Scalar) -> Result<Self> {
        if value.mode() != ctx.mode() {
            return Err(Error::ModeMismatch);
        }
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::one(ctx.total_vars()), value);
        Ok(p)
    }

    pub fn one(ctx: &PolyContext) -> Self {
        Self::constant(ctx, Scalar::one(ctx.mode())).expect("mode matches")
    }

    pub fn variable(ctx: &PolyContext, v: &Variable) -> Result<Self> {
        let idx = ctx.var_index(v)?;
        let mut e = vec![0u32; ctx.total_vars()];
        e[idx] = 1;
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::from_exponents(e), Scalar::one(ctx.mode()));
        Ok(p)
    }

    /// Builds `coeff * prod v_i^e_i`.
    pub fn monomial_of(ctx: &PolyContext, factors: &[(Variable, u32)], coeff: Scalar) -> Result<Self> {
        if coeff.mode() != ctx.mode() {
            return Err(Error::ModeMismatch);
        }
        let mut e = vec![0u32; ctx.total_vars()];
        for (v, k) in factors {
            let idx = ctx.var_index(v)?;
            e[idx] += k;
        }
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::from_exponents(e), coeff);
        Ok(p)
    }

    pub fn context(&self) -> &PolyContext {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Maximum degree over the geometric variables only.
    pub fn z_degree(&self) -> u32 {
        let n = self.ctx.n();
        self.terms
            .keys()
            .map(|m| m.exponents()[..n].iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Maximum degree over the parameter variables only.
    pub fn param_degree(&self) -> u32 {
        let n = self.ctx.n();
        self.terms
            .keys()
            .map(|m| m.exponents()[n..].iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Variable) -> Result<u32> {
        let idx = self.ctx.var_index(v)?;
        Ok(self
            .terms
            .keys()
            .map(|m| m.exponents()[idx])
            .max()
            .unwrap_or(0))
    }

    fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e
                    .get()
                    .checked_add(&coeff)
                    .expect("mode checked at entry");
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ctx.check_ring(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ctx.check_ring(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        SparsePoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ctx.check_ring(&other.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1.checked_mul(c2)?;
                out.add_term(m1.mul(m2), c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Scalar) -> Result<Self> {
        if factor.mode() != self.ctx.mode() {
            return Err(Error::ModeMismatch);
        }
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.checked_mul(factor)?);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Self::one(&self.ctx);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to `v`.
    pub fn differentiate(&self, v: &Variable) -> Result<Self> {
        let idx = self.ctx.var_index(v)?;
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponents()[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[idx] -= 1;
            out.add_term(Monomial::from_exponents(exps), c.mul_int(e));
        }
        Ok(out)
    }

    /// Direct sum of monomial evaluations; exact in rational mode.
    pub fn evaluate(&self, assign: &Assignment) -> Result<Scalar> {
        self.ctx.check_ring(&assign.ctx)?;
        let mut total = Scalar::zero(self.ctx.mode());
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let value = assign.values[idx].as_ref().ok_or_else(|| {
                    Error::MissingAssignment(self.ctx.var_at(idx).to_string())
                })?;
                term = term.checked_mul(&value.pow(e))?;
            }
            total = total.checked_add(&term)?;
        }
        Ok(total)
    }

    /// Fast path: evaluation of a complex-mode polynomial at a full vector of
    /// values in canonical variable order.
    pub fn evaluate_complex(&self, values: &[Complex64]) -> Result<Complex64> {
        if self.ctx.mode() != ScalarMode::Complex {
            return Err(Error::ModeMismatch);
        }
        if values.len() != self.ctx.total_vars() {
            return Err(Error::MissingAssignment(format!(
                "expected {} values, got {}",
                self.ctx.total_vars(),
                values.len()
            )));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = c.to_complex();
            for (idx, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term *= values[idx].powi(e as i32);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes an image polynomial for every variable. `images` is
    /// indexed by canonical variable position and all images must share one
    /// context, which becomes the context of the result.
    pub fn substitute(&self, images: &[SparsePoly]) -> Result<SparsePoly> {
        if images.len() != self.ctx.total_vars() {
            return Err(Error::MissingAssignment(format!(
                "expected {} images, got {}",
                self.ctx.total_vars(),
                images.len()
            )));
        }
        let target = images
            .first()
            .map(|p| p.ctx.clone())
            .ok_or(Error::ContextMismatch)?;
        for img in images {
            target.check_ring(&img.ctx)?;
        }
        if self.ctx.mode() != target.mode() {
            return Err(Error::ModeMismatch);
        }
        let mut out = SparsePoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = SparsePoly::constant(&target, c.clone())?;
            for (idx, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[idx].pow(e)?)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Multiplies the coefficient of each term by `factor^e` where `e` is the
    /// exponent of `v`, i.e. performs the substitution `v -> factor * v`.
    pub fn scale_var(&self, v: &Variable, factor: &Scalar) -> Result<Self> {
        if factor.mode() != self.ctx.mode() {
            return Err(Error::ModeMismatch);
        }
        let idx = self.ctx.var_index(v)?;
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponents()[idx];
            let c = if e == 0 {
                c.clone()
            } else {
                c.checked_mul(&factor.pow(e))?
            };
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// The coefficient of `z^alpha`: all terms whose geometric part equals
    /// `alpha`, with the geometric exponents cleared. A polynomial in the
    /// parameter variables only.
    pub fn coefficient_of_z(&self, alpha: &MultiIndex) -> Result<Self> {
        if alpha.len() != self.ctx.n() {
            return Err(Error::UnknownVariable(format!("z^{alpha}")));
        }
        let n = self.ctx.n();
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.exponents()[..n] == *alpha.exponents() {
                let mut exps = m.exponents().to_vec();
                exps[..n].fill(0);
                out.add_term(Monomial::from_exponents(exps), c.clone());
            }
        }
        Ok(out)
    }

    /// One-way conversion of a rational polynomial to complex mode.
    pub fn to_complex(&self) -> SparsePoly {
        let ctx = self.ctx.to_complex();
        let mut out = SparsePoly::zero(&ctx);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), Scalar::Complex(c.to_complex()));
        }
        out
    }

    /// Canonical literal rendering; parses back to an equal polynomial.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let factors = self.render_factors(m);
            match (self.ctx.mode(), c) {
                (ScalarMode::Rational, Scalar::Rational(r)) => {
                    use num_traits::Signed;
                    let negative = r.is_negative();
                    let mag = r.abs();
                    if i == 0 {
                        if negative {
                            out.push('-');
                        }
                    } else if negative {
                        out.push_str(" - ");
                    } else {
                        out.push_str(" + ");
                    }
                    let mag_is_one = mag == num_rational::BigRational::from_integer(1.into());
                    match &factors {
                        Some(f) if mag_is_one => out.push_str(f),
                        Some(f) => {
                            out.push_str(&mag.to_string());
                            out.push('*');
                            out.push_str(f);
                        }
                        None => out.push_str(&mag.to_string()),
                    }
                }
                (_, c) => {
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    out.push_str(&c.render());
                    if let Some(f) = &factors {
                        out.push('*');
                        out.push_str(f);
                    }
                }
            }
        }
        out
    }

    fn render_factors(&self, m: &Monomial) -> Option<String> {
        if m.is_constant() {
            return None;
        }
        let mut parts = Vec::new();
        for (idx, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = self.ctx.var_at(idx);
            if e == 1 {
                parts.push(v.to_string());
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        Some(parts.join("*"))
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A partial assignment of scalar values to the variables of a context.
#[derive(Debug, Clone)]
pub struct Assignment {
    ctx: PolyContext,
    values: Vec<Option<Scalar>>,
}

impl Assignment {
    pub fn new(ctx: &PolyContext) -> Self {
        Assignment {
            ctx: ctx.clone(),
            values: vec![None; ctx.total_vars()],
        }
    }

    /// A full assignment, values in canonical variable order.
    pub fn full(ctx: &PolyContext, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != ctx.total_vars() {
            return Err(Error::MissingAssignment(format!(
                "expected {} values, got {}",
                ctx.total_vars(),
                values.len()
            )));
        }
        for v in &values {
            if v.mode() != ctx.mode() {
                return Err(Error::ModeMismatch);
            }
        }
        Ok(Assignment {
            ctx: ctx.clone(),
            values: values.into_iter().map(Some).collect(),
        })
    }

    pub fn set(&mut self, v: &Variable, value: Scalar) -> Result<()> {
        if value.mode() != self.ctx.mode() {
            return Err(Error::ModeMismatch);
        }
        let idx = self.ctx.var_index(v)?;
        self.values[idx] = Some(value);
        Ok(())
    }

    pub fn context(&self) -> &PolyContext {
        &self.ctx
    }

    pub fn get(&self, v: &Variable) -> Result<Option<&Scalar>> {
        Ok(self.values[self.ctx.var_index(v)?].as_ref())
    }

    pub fn value_at(&self, idx: usize) -> Option<&Scalar> {
        self.values[idx].as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn rat(s: &str) -> Scalar {
        Scalar::Rational(parse_rational(s).unwrap())
    }

    fn ctx12() -> PolyContext {
        PolyContext::chart(1, 2, ScalarMode::Rational).unwrap()
    }

    #[test]
    fn chart_context_variables() {
        let ctx = ctx12();
        assert_eq!(ctx.total_vars(), 4); // z1, a(0), a(1), a(2)
        assert_eq!(ctx.var_index(&Variable::z(1)).unwrap(), 0);
        assert_eq!(
            ctx.var_index(&Variable::param(MultiIndex::new(vec![2]))).unwrap(),
            3
        );
        assert!(ctx
            .var_index(&Variable::param(MultiIndex::new(vec![3])))
            .is_err());
        assert!(ctx.var_index(&Variable::z(2)).is_err());
    }

    #[test]
    fn cancellation_and_products() {
        let ctx = ctx12();
        let z = SparsePoly::variable(&ctx, &Variable::z(1)).unwrap();
        let one = SparsePoly::one(&ctx);
        // (z+1) + (z-1) = 2z
        let s = z.add(&one).unwrap().add(&z.sub(&one).unwrap()).unwrap();
        assert_eq!(s, z.scale(&rat("2")).unwrap());

        // (z + a1)(z - a1) = z^2 - a1^2
        let a1 = SparsePoly::variable(&ctx, &Variable::param(MultiIndex::new(vec![1]))).unwrap();
        let prod = z.add(&a1).unwrap().mul(&z.sub(&a1).unwrap()).unwrap();
        let expected = z.pow(2).unwrap().sub(&a1.pow(2).unwrap()).unwrap();
        assert_eq!(prod, expected);

        // (1/3 z)(3/2 z) = 1/2 z^2
        let p = z.scale(&rat("1/3")).unwrap().mul(&z.scale(&rat("3/2")).unwrap()).unwrap();
        assert_eq!(p, z.pow(2).unwrap().scale(&rat("1/2")).unwrap());
    }

    #[test]
    fn differentiation() {
        let ctx = PolyContext::chart(3, 2, ScalarMode::Rational).unwrap();
        let z1 = SparsePoly::variable(&ctx, &Variable::z(1)).unwrap();
        let z2 = SparsePoly::variable(&ctx, &Variable::z(2)).unwrap();
        // d/dz1 (z1^2 z2) = 2 z1 z2
        let p = z1.pow(2).unwrap().mul(&z2).unwrap();
        assert_eq!(
            p.differentiate(&Variable::z(1)).unwrap(),
            z1.mul(&z2).unwrap().scale(&rat("2")).unwrap()
        );
        // absent variable gives zero
        let q = z1.pow(2).unwrap().add(&z2).unwrap();
        assert!(q.differentiate(&Variable::z(3)).unwrap().is_zero());

        // linear in parameters: d/da (a z1^2) = z1^2
        let a = Variable::param(MultiIndex::new(vec![2, 0, 0]));
        let av = SparsePoly::variable(&ctx, &a).unwrap();
        let p = av.mul(&z1.pow(2).unwrap()).unwrap();
        assert_eq!(p.differentiate(&a).unwrap(), z1.pow(2).unwrap());
    }

    #[test]
    fn evaluation() {
        let ctx = ctx12();
        let z = SparsePoly::variable(&ctx, &Variable::z(1)).unwrap();
        let a1v = Variable::param(MultiIndex::new(vec![1]));
        let a1 = SparsePoly::variable(&ctx, &a1v).unwrap();
        // 3/2 z - a1 at z=2, a1=1 -> 2
        let p = z.scale(&rat("3/2")).unwrap().sub(&a1).unwrap();
        let mut assign = Assignment::new(&ctx);
        assign.set(&Variable::z(1), rat("2")).unwrap();
        assign.set(&a1v, rat("1")).unwrap();
        assert_eq!(p.evaluate(&assign).unwrap(), rat("2"));

        // missing assignment reported with the variable name
        let q = p.mul(&SparsePoly::variable(&ctx, &Variable::param(MultiIndex::new(vec![2]))).unwrap()).unwrap();
        match q.evaluate(&assign) {
            Err(Error::MissingAssignment(name)) => assert_eq!(name, "a(2)"),
            other => panic!("expected missing assignment, got {other:?}"),
        }

        // annihilation at zero
        let mut zeros = Assignment::new(&ctx);
        for v in ctx.variables() {
            zeros.set(&v, rat("0")).unwrap();
        }
        assert!(q.evaluate(&zeros).unwrap().is_zero());
    }

    #[test]
    fn render_examples() {
        let ctx = ctx12();
        let z = SparsePoly::variable(&ctx, &Variable::z(1)).unwrap();
        let a2 = SparsePoly::variable(&ctx, &Variable::param(MultiIndex::new(vec![2]))).unwrap();
        let p = z
            .pow(2)
            .unwrap()
            .mul(&a2)
            .unwrap()
            .sub(&SparsePoly::constant(&ctx, rat("1/3")).unwrap())
            .unwrap();
        assert_eq!(p.render(), "-1/3 + z1^2*a(2)");
        assert!(SparsePoly::zero(&ctx).render() == "0");
    }

    #[test]
    fn context_and_mode_mismatches() {
        let c1 = ctx12();
        let c2 = PolyContext::chart(2, 2, ScalarMode::Rational).unwrap();
        let p = SparsePoly::one(&c1);
        let q = SparsePoly::one(&c2);
        assert!(matches!(p.add(&q), Err(Error::ContextMismatch)));

        let c3 = c1.to_complex();
        let r = SparsePoly::one(&c3);
        assert!(matches!(p.mul(&r), Err(Error::ModeMismatch)));
    }
}
