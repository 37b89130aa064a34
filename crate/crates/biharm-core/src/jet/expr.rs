//! Closed-form scalar expressions over chart coordinates: the grammar all
//! catalog charts are built from.

use super::{Jet, JetSpace};
use crate::error::Error;
use crate::exact::Surd;
use crate::scalar::Real;
use crate::Result;
use alloc::boxed::Box;
use alloc::rc::Rc;
use alloc::string::ToString;

/// Expression tree over coordinates `u¹…uᵐ`, exact constants, field
/// operations, `sin`, `cos`, `sqrt` and integer powers.
#[derive(Clone, Debug)]
pub enum Expr {
    Coord(usize),
    Const(Surd),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Sqrt(Box<Expr>),
    Powi(Box<Expr>, i32),
}

impl Expr {
    pub fn coord(i: usize) -> Expr {
        Expr::Coord(i)
    }
    pub fn constant(s: Surd) -> Expr {
        Expr::Const(s)
    }
    pub fn zero() -> Expr {
        Expr::Const(Surd::from_int(0))
    }
    pub fn sin(self) -> Expr {
        Expr::Sin(Box::new(self))
    }
    pub fn cos(self) -> Expr {
        Expr::Cos(Box::new(self))
    }
    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }
    pub fn mul(self, o: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(o))
    }
    pub fn add(self, o: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(o))
    }
    pub fn sub(self, o: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(o))
    }
    pub fn div(self, o: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(o))
    }
    pub fn powi(self, n: i32) -> Expr {
        Expr::Powi(Box::new(self), n)
    }

    fn surd_to_scalar<S: Real>(s: &Surd) -> S {
        let p = S::from_rational(s.rational_part());
        let q = S::from_rational(s.surd_coeff());
        let d = S::from_rational(&s.radicand());
        p + q * d.sqrt()
    }

    /// Plain scalar evaluation with domain checks.
    pub fn eval<S: Real>(&self, point: &[S]) -> Result<S> {
        Ok(match self {
            Expr::Coord(i) => point[*i],
            Expr::Const(s) => Self::surd_to_scalar(s),
            Expr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Expr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Expr::Mul(a, b) => a.eval(point)? * b.eval(point)?,
            Expr::Div(a, b) => {
                let den = b.eval(point)?;
                if den == S::zero() {
                    return Err(Error::Domain("division by zero".to_string()));
                }
                a.eval(point)? / den
            }
            Expr::Neg(a) => -a.eval(point)?,
            Expr::Sin(a) => a.eval(point)?.sin(),
            Expr::Cos(a) => a.eval(point)?.cos(),
            Expr::Sqrt(a) => {
                let v = a.eval(point)?;
                if v < S::zero() {
                    return Err(Error::Domain("square root of negative value".to_string()));
                }
                v.sqrt()
            }
            Expr::Powi(a, n) => {
                let v = a.eval(point)?;
                if *n < 0 && v == S::zero() {
                    return Err(Error::Domain("zero to a negative power".to_string()));
                }
                v.powi(*n)
            }
        })
    }
}

/// Constant subtrees stay scalars until an operation mixes them with a
/// coordinate-bearing jet; this keeps `sqrt(b²)` exact even when `b = 0`.
enum Value<S> {
    Scalar(S),
    Jet(Jet<S>),
}

impl<S: Real> Value<S> {
    fn into_jet(self, space: &Rc<JetSpace>) -> Jet<S> {
        match self {
            Value::Scalar(s) => Jet::constant(space, s),
            Value::Jet(j) => j,
        }
    }
}

fn eval_jet<S: Real>(e: &Expr, space: &Rc<JetSpace>, point: &[S]) -> Result<Value<S>> {
    use Value::*;
    Ok(match e {
        Expr::Coord(i) => Jet(super::Jet::variable(space, *i, point[*i])),
        Expr::Const(s) => Scalar(Expr::surd_to_scalar(s)),
        Expr::Add(a, b) => match (eval_jet(a, space, point)?, eval_jet(b, space, point)?) {
            (Scalar(x), Scalar(y)) => Scalar(x + y),
            (x, y) => Jet(x.into_jet(space).add(&y.into_jet(space))),
        },
        Expr::Sub(a, b) => match (eval_jet(a, space, point)?, eval_jet(b, space, point)?) {
            (Scalar(x), Scalar(y)) => Scalar(x - y),
            (x, y) => Jet(x.into_jet(space).sub(&y.into_jet(space))),
        },
        Expr::Mul(a, b) => match (eval_jet(a, space, point)?, eval_jet(b, space, point)?) {
            (Scalar(x), Scalar(y)) => Scalar(x * y),
            (Scalar(x), Jet(y)) | (Jet(y), Scalar(x)) => Jet(y.scale(x)),
            (Jet(x), Jet(y)) => Jet(x.mul(&y)),
        },
        Expr::Div(a, b) => match (eval_jet(a, space, point)?, eval_jet(b, space, point)?) {
            (Scalar(x), Scalar(y)) => {
                if y == S::zero() {
                    return Err(Error::Domain("division by zero".to_string()));
                }
                Scalar(x / y)
            }
            (Jet(x), Scalar(y)) => {
                if y == S::zero() {
                    return Err(Error::Domain("division by zero".to_string()));
                }
                Jet(x.scale(S::one() / y))
            }
            (x, y) => Jet(x.into_jet(space).div(&y.into_jet(space))?),
        },
        Expr::Neg(a) => match eval_jet(a, space, point)? {
            Scalar(x) => Scalar(-x),
            Jet(x) => Jet(x.neg()),
        },
        Expr::Sin(a) => match eval_jet(a, space, point)? {
            Scalar(x) => Scalar(x.sin()),
            Jet(x) => Jet(x.sin()),
        },
        Expr::Cos(a) => match eval_jet(a, space, point)? {
            Scalar(x) => Scalar(x.cos()),
            Jet(x) => Jet(x.cos()),
        },
        Expr::Sqrt(a) => match eval_jet(a, space, point)? {
            Scalar(x) => {
                if x < S::zero() {
                    return Err(Error::Domain("square root of negative value".to_string()));
                }
                Scalar(x.sqrt())
            }
            Jet(x) => Jet(x.sqrt()?),
        },
        Expr::Powi(a, n) => match eval_jet(a, space, point)? {
            Scalar(x) => {
                if *n < 0 && x == S::zero() {
                    return Err(Error::Domain("zero to a negative power".to_string()));
                }
                Scalar(x.powi(*n))
            }
            Jet(x) => Jet(x.powi(*n)?),
        },
    })
}

/// Taylor jet of `e` at `point`, valid to total order `space.order()`.
pub fn jet_at<S: Real>(e: &Expr, space: &Rc<JetSpace>, point: &[S]) -> Result<Jet<S>> {
    assert_eq!(point.len(), space.vars(), "point dimension mismatch");
    Ok(eval_jet(e, space, point)?.into_jet(space))
}
