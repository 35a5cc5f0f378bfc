//! Pointwise generation certificates: the constructed fields span the
//! tangent space of the chart hypersurface, and an `n-2`-field selection
//! extends a given tangent frame to a nonzero wedge.
//!
//! Working in the affine parameter chart adds the radial direction to the
//! tangent space, so the parameter Euler field `sum a_alpha d/da_alpha` is
//! part of the generating set and the rank target is `n + N_d`, the full
//! dimension of the chart hypersurface. The Euler field satisfies
//! `E(F) = F` (it is tangent along the family, where `F` vanishes) rather
//! than the stronger zero identity of the other two families; its rows still
//! annihilate `dF` at every point on the hypersurface.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fields::{build_basic_field, lift_field, LinearFieldSpec, VectorField};
use crate::linalg::rank_fraction_free;
use crate::multiindex::MultiIndex;
use crate::poly::{PolyContext, SparsePoly, Variable};
use crate::scalar::{Scalar, ScalarMode};
use crate::universal::{ChartPoint, UniversalEquation};

/// Identifies one member of the generating set.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldDescriptor {
    Basic { alpha: MultiIndex, j: usize },
    Lift { spec: LinearFieldSpec },
    Euler,
}

impl FieldDescriptor {
    pub fn materialize(&self, eq: &UniversalEquation) -> Result<VectorField> {
        match self {
            FieldDescriptor::Basic { alpha, j } => build_basic_field(eq, alpha, *j),
            FieldDescriptor::Lift { spec } => lift_field(spec, eq),
            FieldDescriptor::Euler => Ok(euler_field(eq)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            FieldDescriptor::Basic { alpha, j } => serde_json::json!({
                "kind": "basic",
                "alpha": alpha.to_json(),
                "j": j,
            }),
            FieldDescriptor::Lift { spec } => {
                let n = spec.n();
                let ctx = PolyContext::plain(n, ScalarMode::Rational).expect("n >= 1");
                let mut v0 = Vec::with_capacity(n);
                for j in 1..=n {
                    let mut p = SparsePoly::constant(
                        &ctx,
                        Scalar::Rational(spec.constant_part(j).clone()),
                    )
                    .expect("rational mode");
                    for k in 1..=n {
                        let zk = SparsePoly::variable(&ctx, &Variable::z(k)).expect("in range");
                        p = p
                            .add(&zk.scale(&Scalar::Rational(spec.linear_part(j, k).clone())).unwrap())
                            .unwrap();
                    }
                    v0.push(serde_json::Value::String(p.render()));
                }
                serde_json::json!({ "kind": "lift", "v0": v0 })
            }
            FieldDescriptor::Euler => serde_json::json!({ "kind": "euler" }),
        }
    }
}

/// The parameter Euler field `sum_alpha a_alpha d/da_alpha`.
pub fn euler_field(eq: &UniversalEquation) -> VectorField {
    let ctx = eq.context();
    let mut field = VectorField::zero(ctx);
    for alpha in ctx.params() {
        let v = Variable::param(alpha.clone());
        let coeff = SparsePoly::variable(ctx, &v).expect("parameter in context");
        field.set(v, coeff).expect("context matches");
    }
    field
}

/// Every basic field, every basis lift, and the Euler field, in a fixed
/// deterministic order.
pub fn generating_set(eq: &UniversalEquation) -> Result<Vec<(FieldDescriptor, VectorField)>> {
    let mut out = Vec::new();
    for alpha in eq.context().params() {
        if alpha.is_zero() {
            continue;
        }
        for j in 1..=eq.n() {
            if alpha.entry(j) >= 1 {
                let field = build_basic_field(eq, alpha, j)?;
                out.push((
                    FieldDescriptor::Basic {
                        alpha: alpha.clone(),
                        j,
                    },
                    field,
                ));
            }
        }
    }
    for spec in LinearFieldSpec::basis(eq.n()) {
        let field = lift_field(&spec, eq)?;
        out.push((FieldDescriptor::Lift { spec }, field));
    }
    out.push((FieldDescriptor::Euler, euler_field(eq)));
    Ok(out)
}

/// A point, the evaluated generating set, and the exact rank verdict.
#[derive(Debug, Clone)]
pub struct GenerationCertificate {
    pub point: ChartPoint,
    pub descriptors: Vec<FieldDescriptor>,
    /// Evaluated fields as rows, canonical variable order.
    pub matrix: Vec<Vec<BigRational>>,
    pub rank: usize,
    /// `n + N_d`, the dimension of the chart hypersurface.
    pub target: usize,
    pub verdict: bool,
}

impl GenerationCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "point": self.point.to_json(),
            "fields": self.descriptors.iter().map(FieldDescriptor::to_json).collect::<Vec<_>>(),
            "matrix": self.matrix.iter().map(|row| {
                row.iter().map(|x| serde_json::Value::String(x.to_string())).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "rank": self.rank,
            "target": self.target,
            "verdict": self.verdict,
        })
    }
}

fn rational_row(values: Vec<Scalar>) -> Result<Vec<BigRational>> {
    values
        .into_iter()
        .map(|s| s.as_rational().cloned())
        .collect()
}

fn rational_differential(eq: &UniversalEquation, point: &ChartPoint) -> Result<Vec<BigRational>> {
    rational_row(point.differential(eq)?)
}

fn annihilates(row: &[BigRational], df: &[BigRational]) -> bool {
    let dot: BigRational = row.iter().zip(df).map(|(a, b)| a * b).sum();
    dot.is_zero()
}

/// Exact rank of the evaluated generating set at a point on the
/// hypersurface; verdict is true iff the fields span the full tangent space.
pub fn span_check(eq: &UniversalEquation, point: &ChartPoint) -> Result<GenerationCertificate> {
    if point.context().mode() != ScalarMode::Rational {
        return Err(Error::ModeMismatch);
    }
    if !point.context().same_shape(eq.context()) {
        return Err(Error::ContextMismatch);
    }
    if !eq.membership(&point.assignment())? {
        return Err(Error::NotOnHypersurface {
            residual: eq.polynomial().evaluate(&point.assignment())?.render(),
        });
    }
    let df = rational_differential(eq, point)?;
    let mut descriptors = Vec::new();
    let mut matrix = Vec::new();
    for (descriptor, field) in generating_set(eq)? {
        let row = rational_row(field.evaluate(point)?)?;
        // tangency witness: every row annihilates dF at the point
        if !annihilates(&row, &df) {
            return Err(Error::NotTangent {
                index: descriptors.len(),
            });
        }
        descriptors.push(descriptor);
        matrix.push(row);
    }
    let rank = rank_fraction_free(&matrix);
    let target = eq.n() + eq.nd();
    Ok(GenerationCertificate {
        point: point.clone(),
        descriptors,
        verdict: rank == target,
        rank,
        target,
        matrix,
    })
}

/// A tangent frame at a point together with the chosen extension fields.
#[derive(Debug, Clone)]
pub struct WedgeSelection {
    pub point: ChartPoint,
    /// The `1 + N_d` tangent vectors standing in for a maximal-rank
    /// differential.
    pub jac: Vec<Vec<BigRational>>,
    pub chosen: Vec<FieldDescriptor>,
    pub wedge_nonzero: bool,
}

impl WedgeSelection {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "point": self.point.to_json(),
            "jac": self.jac.iter().map(|row| {
                row.iter().map(|x| serde_json::Value::String(x.to_string())).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "chosen": self.chosen.iter().map(FieldDescriptor::to_json).collect::<Vec<_>>(),
            "wedge_nonzero": self.wedge_nonzero,
        })
    }
}

/// Greedy search for `max(n-2, 0)` generating fields whose values at the
/// point extend `jac` to an independent family of size `n - 1 + N_d`.
/// Exhaustive failure is reported through `wedge_nonzero = false`, never
/// papered over.
pub fn select_wedge_fields(
    eq: &UniversalEquation,
    point: &ChartPoint,
    jac: Vec<Vec<BigRational>>,
) -> Result<WedgeSelection> {
    let expected = 1 + eq.nd();
    if jac.len() != expected {
        return Err(Error::InvalidDimension(format!(
            "expected {} frame vectors, got {}",
            expected,
            jac.len()
        )));
    }
    let width = eq.context().total_vars();
    if jac.iter().any(|v| v.len() != width) {
        return Err(Error::InvalidDimension(format!(
            "frame vectors must have {width} entries"
        )));
    }
    let df = rational_differential(eq, point)?;
    for (i, v) in jac.iter().enumerate() {
        if !annihilates(v, &df) {
            return Err(Error::NotTangent { index: i });
        }
    }
    let base_rank = rank_fraction_free(&jac);
    if base_rank != jac.len() {
        return Err(Error::DependentFrame {
            rank: base_rank,
            expected: jac.len(),
        });
    }

    let want = eq.n().saturating_sub(2);
    let mut family = jac.clone();
    let mut rank = base_rank;
    let mut chosen = Vec::new();
    for (descriptor, field) in generating_set(eq)? {
        if chosen.len() == want {
            break;
        }
        let row = rational_row(field.evaluate(point)?)?;
        family.push(row);
        let new_rank = rank_fraction_free(&family);
        if new_rank > rank {
            rank = new_rank;
            chosen.push(descriptor);
        } else {
            family.pop();
        }
    }
    let wedge_nonzero = chosen.len() == want && rank == base_rank + want;
    Ok(WedgeSelection {
        point: point.clone(),
        jac,
        chosen,
        wedge_nonzero,
    })
}
