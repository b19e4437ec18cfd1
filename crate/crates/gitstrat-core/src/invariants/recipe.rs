//! A small expression language composing the invariant primitives.
//!
//! Expressions are evaluated at a point `x` of an ambient representation and
//! produce polynomials in auxiliary variables; an invariant value is an
//! expression that evaluates to a constant.

use super::{det_poly, disc_binary, disc_quadratic_form, pfaffian, primitive, InvariantError};
use crate::exact::Rat;
use crate::poly::Poly;
use crate::ring::Ring;
use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::Zero;

/// Expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Coordinate with the given 1-based ordinal.
    Coord(usize),
    Const(Rat),
    /// Auxiliary variable `u_{k+1}`.
    Var(usize),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
    Det(Vec<Vec<Expr>>),
    /// Pfaffian of an alternating matrix given in full.
    Pfaffian(Vec<Vec<Expr>>),
    /// Discriminant of a binary form of degree 2 or 3.
    DiscBinary(Box<Expr>, u32),
    /// Discriminant of a quadratic form in `vars` variables, normalized at `anchor`.
    DiscQuadratic { form: Box<Expr>, vars: usize, anchor: Box<Expr> },
    /// A catalogued invariant applied to the tensor with the given dense coordinates.
    Call { name: String, args: Vec<Expr> },
}

/// One invariant of a recipe with its expected value at the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeInvariant {
    pub name: String,
    pub expr: Expr,
    pub expected: Option<Rat>,
}

/// Invariants attached to one stratum and the point where they are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub index: usize,
    /// Sparse representative: (ordinal, coefficient).
    pub representative: Vec<(usize, Rat)>,
    pub invariants: Vec<RecipeInvariant>,
}

impl Recipe {
    /// Dense coordinates of the representative in a space of dimension `dim`.
    pub fn representative_point(&self, dim: usize) -> Vec<Rat> {
        let mut x = alloc::vec![Rat::zero(); dim];
        for (o, c) in &self.representative {
            x[o - 1] += c;
        }
        x
    }
}

fn constant(p: &Poly) -> Result<Rat, InvariantError> {
    match p.degree() {
        None => Ok(Rat::zero()),
        Some(0) => Ok(p.coeff(&crate::poly::Monomial::one())),
        Some(_) => Err(InvariantError::NotConstant),
    }
}

fn eval_matrix(m: &[Vec<Expr>], x: &[Rat]) -> Result<Vec<Vec<Poly>>, InvariantError> {
    m.iter().map(|r| r.iter().map(|e| eval_expr(e, x)).collect()).collect()
}

/// Evaluates an expression at `x` (indexed by ordinal minus one).
pub fn eval_expr(e: &Expr, x: &[Rat]) -> Result<Poly, InvariantError> {
    Ok(match e {
        Expr::Coord(o) => {
            let v = o.checked_sub(1).and_then(|i| x.get(i)).ok_or(InvariantError::Shape { expected: x.len(), got: *o })?;
            Poly::constant(v.clone())
        }
        Expr::Const(c) => Poly::constant(c.clone()),
        Expr::Var(k) => Poly::var(*k),
        Expr::Add(v) => {
            let mut acc = Poly::zero();
            for t in v {
                acc = acc.plus(&eval_expr(t, x)?);
            }
            acc
        }
        Expr::Mul(v) => {
            let mut acc = Poly::one_elem();
            for t in v {
                acc = acc.times(&eval_expr(t, x)?);
            }
            acc
        }
        Expr::Neg(t) => eval_expr(t, x)?.negate(),
        Expr::Pow(t, k) => eval_expr(t, x)?.power(*k),
        Expr::Det(m) => det_poly(&eval_matrix(m, x)?)?,
        Expr::Pfaffian(m) => pfaffian(&eval_matrix(m, x)?)?,
        Expr::DiscBinary(t, d) => Poly::constant(disc_binary(&eval_expr(t, x)?, *d)?),
        Expr::DiscQuadratic { form, vars, anchor } => {
            Poly::constant(disc_quadratic_form(&eval_expr(form, x)?, *vars, &eval_expr(anchor, x)?)?)
        }
        Expr::Call { name, args } => {
            let spec = primitive(name)?;
            if args.len() != spec.rep.dim() {
                return Err(InvariantError::Shape { expected: spec.rep.dim(), got: args.len() });
            }
            let y = args.iter().map(|a| constant(&eval_expr(a, x)?)).collect::<Result<Vec<_>, _>>()?;
            Poly::constant((spec.eval)(&y)?)
        }
    })
}

/// Evaluates every invariant of a recipe at `x`.
pub fn eval_recipe(recipe: &Recipe, x: &[Rat]) -> Result<Vec<Rat>, InvariantError> {
    recipe.invariants.iter().map(|inv| constant(&eval_expr(&inv.expr, x)?)).collect()
}
