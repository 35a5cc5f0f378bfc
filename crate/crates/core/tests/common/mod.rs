//! Test-only oracles, kept independent of the implementation paths they
//! check: a plain rational Gaussian eliminator (vs. the fraction-free rank)
//! and a brute-force linear-system lift construction (vs. the closed-form
//! coefficient read-off).
#![allow(dead_code)] // each test binary uses its own subset

use num_rational::BigRational;
use num_traits::{One, Zero};

use unihyp_core::fields::{LinearFieldSpec, VectorField};
use unihyp_core::poly::{SparsePoly, Variable};
use unihyp_core::scalar::Scalar;
use unihyp_core::universal::UniversalEquation;

/// Rank by straightforward rational row reduction with division.
pub fn gauss_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for j in col..ncols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..ncols {
                    let sub = &factor * &m[rank][j];
                    m[r][j] = &m[r][j] - sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Solves `A x = b` by Gauss-Jordan elimination; `None` when the system is
/// inconsistent or underdetermined.
pub fn gauss_solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let nrows = a.len();
    let ncols = a.first()?.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].recip();
        for j in col..=ncols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=ncols {
                    let sub = &factor * &m[rank][j];
                    m[r][j] = &m[r][j] - sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    // inconsistent when a zero row has nonzero rhs; underdetermined when
    // some column never hosted a pivot
    for r in rank..nrows {
        if !m[r][ncols].is_zero() {
            return None;
        }
    }
    if rank != ncols {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[r][ncols].clone();
    }
    Some(x)
}

/// Brute-force lift: set up the full tangency linear system (one unknown per
/// parameter index per affine coefficient in the parameters, one equation
/// per monomial of `V(F)`) and solve it by exact elimination. Never touches
/// the closed-form read-off.
pub fn brute_force_lift(spec: &LinearFieldSpec, eq: &UniversalEquation) -> VectorField {
    let ctx = eq.context();
    let n = ctx.n();
    let params = ctx.params().to_vec();
    let p_count = params.len();

    // the known part: sum_alpha a_alpha * sum_j v_j * d(z^alpha)/dz_j,
    // assembled from polynomial primitives only
    let mut g = SparsePoly::zero(ctx);
    for alpha in &params {
        let mut z_factors = Vec::new();
        for (idx, &e) in alpha.exponents().iter().enumerate() {
            if e > 0 {
                z_factors.push((Variable::z(idx + 1), e));
            }
        }
        let z_alpha = SparsePoly::monomial_of(ctx, &z_factors, Scalar::from_int(1, ctx.mode()))
            .expect("valid monomial");
        let a_alpha = SparsePoly::variable(ctx, &Variable::param(alpha.clone())).unwrap();
        for j in 1..=n {
            let mut vj = SparsePoly::constant(
                ctx,
                Scalar::Rational(spec.constant_part(j).clone()),
            )
            .unwrap();
            for k in 1..=n {
                let zk = SparsePoly::variable(ctx, &Variable::z(k)).unwrap();
                vj = vj
                    .add(&zk.scale(&Scalar::Rational(spec.linear_part(j, k).clone())).unwrap())
                    .unwrap();
            }
            let dz = z_alpha.differentiate(&Variable::z(j)).unwrap();
            g = g.add(&a_alpha.mul(&vj).unwrap().mul(&dz).unwrap()).unwrap();
        }
    }

    // unknowns: x[b * (P+1) + e] is the coefficient of the affine a-basis
    // element e (0 = the constant, e >= 1 = a_{params[e-1]}) inside v_beta_b.
    // each unknown owns the distinct monomial z^{beta_b} * e, so the matrix
    // rows are indexed the same way.
    let unknowns = p_count * (p_count + 1);
    let mut a_mat = vec![vec![BigRational::zero(); unknowns]; unknowns];
    let mut rhs = vec![BigRational::zero(); unknowns];
    for (idx, row) in a_mat.iter_mut().enumerate() {
        row[idx] = BigRational::one();
    }
    for (mono, coeff) in g.terms() {
        let exps = mono.exponents();
        let z_part = &exps[..n];
        let b = params
            .iter()
            .position(|alpha| alpha.exponents() == z_part)
            .expect("z-degree of V0(F) stays within d");
        let a_part = &exps[n..];
        let mut nonzero = a_part.iter().enumerate().filter(|(_, &e)| e > 0);
        let e_idx = match nonzero.next() {
            Some((i, &1)) if nonzero.next().is_none() => i + 1,
            _ => panic!("V0(F) must be affine of degree one in the parameters"),
        };
        let row = b * (p_count + 1) + e_idx;
        rhs[row] = -coeff.as_rational().unwrap().clone();
    }

    let x = gauss_solve(&a_mat, &rhs).expect("lift system is uniquely solvable");

    let mut field = spec.geometric_field(ctx).unwrap();
    for (b, beta) in params.iter().enumerate() {
        let mut v_beta =
            SparsePoly::constant(ctx, Scalar::Rational(x[b * (p_count + 1)].clone())).unwrap();
        for (e, gamma) in params.iter().enumerate() {
            let coeff = Scalar::Rational(x[b * (p_count + 1) + e + 1].clone());
            let a_gamma = SparsePoly::variable(ctx, &Variable::param(gamma.clone())).unwrap();
            v_beta = v_beta.add(&a_gamma.scale(&coeff).unwrap()).unwrap();
        }
        field.set(Variable::param(beta.clone()), v_beta).unwrap();
    }
    field
}
