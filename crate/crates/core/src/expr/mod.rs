//! Scalar expressions of one real variable.
//!
//! Boundary data enter the solver as text such as `1 - y` or `exp(x/3)`.
//! The text is parsed into an [`Expr`] tree that can be evaluated and
//! differentiated symbolically, so derivatives of the data never go through
//! finite differences.

mod diff;
mod parser;

use std::fmt;

pub use parser::{parse, ParseError};

/// Elementary functions accepted by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sqrt,
    Log,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            "log" => Func::Log,
            _ => return None,
        })
    }
}

/// Expression tree. Trees are immutable once built; the smart constructors
/// (`Expr::add`, `Expr::mul`, ...) fold constants as they go.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// Evaluation outside the domain of some node.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{reason} in `{node}` at argument {arg}")]
pub struct EvalError {
    pub node: String,
    pub arg: f64,
    pub reason: &'static str,
}

fn folded(v: f64) -> Option<Expr> {
    v.is_finite().then_some(Expr::Const(v))
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn constant(v: f64) -> Expr {
        Expr::Const(v)
    }

    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    /// True when the tree is the literal constant zero.
    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    pub fn neg(e: Expr) -> Expr {
        match e {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(inner) => *inner,
            e => Expr::Neg(Box::new(e)),
        }
    }

    pub fn add(l: Expr, r: Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => folded(a + b).unwrap_or_else(|| Expr::Add(l.into(), r.into())),
            (Some(0.0), None) => r,
            (None, Some(0.0)) => l,
            _ => Expr::Add(Box::new(l), Box::new(r)),
        }
    }

    pub fn sub(l: Expr, r: Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => folded(a - b).unwrap_or_else(|| Expr::Sub(l.into(), r.into())),
            (Some(0.0), None) => Expr::neg(r),
            (None, Some(0.0)) => l,
            _ => Expr::Sub(Box::new(l), Box::new(r)),
        }
    }

    pub fn mul(l: Expr, r: Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => folded(a * b).unwrap_or_else(|| Expr::Mul(l.into(), r.into())),
            (Some(0.0), None) | (None, Some(0.0)) => Expr::Const(0.0),
            (Some(1.0), None) => r,
            (None, Some(1.0)) => l,
            (Some(-1.0), None) => Expr::neg(r),
            (None, Some(-1.0)) => Expr::neg(l),
            _ => Expr::Mul(Box::new(l), Box::new(r)),
        }
    }

    pub fn div(l: Expr, r: Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) if b != 0.0 => {
                folded(a / b).unwrap_or_else(|| Expr::Div(l.into(), r.into()))
            }
            (None, Some(1.0)) => l,
            _ => Expr::Div(Box::new(l), Box::new(r)),
        }
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        match (base.as_const(), exponent.as_const()) {
            (Some(a), Some(b)) => {
                let v = a.powf(b);
                if v.is_finite() {
                    Expr::Const(v)
                } else {
                    Expr::Pow(Box::new(base), Box::new(exponent))
                }
            }
            (None, Some(1.0)) => base,
            _ => Expr::Pow(Box::new(base), Box::new(exponent)),
        }
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        if let Some(a) = arg.as_const() {
            let v = apply(f, a);
            if v.is_finite() && domain_ok(f, a) {
                return Expr::Const(v);
            }
        }
        Expr::Call(f, Box::new(arg))
    }

    /// Evaluate at `x`. Fails on division by zero, `log` of a non-positive
    /// number, `sqrt` of a negative number, or any non-finite intermediate.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let fail = |node: &Expr, arg: f64, reason| EvalError {
            node: node.to_string(),
            arg,
            reason,
        };
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Add(l, r) => l.eval(x)? + r.eval(x)?,
            Expr::Sub(l, r) => l.eval(x)? - r.eval(x)?,
            Expr::Mul(l, r) => l.eval(x)? * r.eval(x)?,
            Expr::Div(l, r) => {
                let den = r.eval(x)?;
                if den == 0.0 {
                    return Err(fail(self, x, "division by zero"));
                }
                l.eval(x)? / den
            }
            Expr::Pow(b, e) => {
                let base = b.eval(x)?;
                let exp = e.eval(x)?;
                let v = base.powf(exp);
                if v.is_nan() {
                    return Err(fail(self, x, "non-integer power of a negative base"));
                }
                v
            }
            Expr::Call(f, arg) => {
                let a = arg.eval(x)?;
                if !domain_ok(*f, a) {
                    let reason = match f {
                        Func::Log => "logarithm of a non-positive number",
                        _ => "square root of a negative number",
                    };
                    return Err(fail(self, a, reason));
                }
                apply(*f, a)
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(fail(self, x, "non-finite value"))
        }
    }

    /// Symbolic derivative with respect to the variable.
    pub fn differentiate(&self) -> Expr {
        diff::derivative(self)
    }

    /// Rebuild the tree through the folding constructors.
    pub fn fold(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Var => self.clone(),
            Expr::Neg(e) => Expr::neg(e.fold()),
            Expr::Add(l, r) => Expr::add(l.fold(), r.fold()),
            Expr::Sub(l, r) => Expr::sub(l.fold(), r.fold()),
            Expr::Mul(l, r) => Expr::mul(l.fold(), r.fold()),
            Expr::Div(l, r) => Expr::div(l.fold(), r.fold()),
            Expr::Pow(b, e) => Expr::pow(b.fold(), e.fold()),
            Expr::Call(f, a) => Expr::call(*f, a.fold()),
        }
    }

    /// Render in the input grammar with the given variable name. Every
    /// compound node is parenthesized, so the output parses back to an
    /// equivalent tree.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        Printer { expr: self, var }
    }
}

fn apply(f: Func, a: f64) -> f64 {
    match f {
        Func::Exp => a.exp(),
        Func::Sin => a.sin(),
        Func::Cos => a.cos(),
        Func::Sqrt => a.sqrt(),
        Func::Log => a.ln(),
    }
}

fn domain_ok(f: Func, a: f64) -> bool {
    match f {
        Func::Log => a > 0.0,
        Func::Sqrt => a >= 0.0,
        _ => true,
    }
}

struct Printer<'a> {
    expr: &'a Expr,
    var: &'a str,
}

impl<'a> fmt::Display for Printer<'a> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.var;
        let sub = |e: &'a Expr| Printer { expr: e, var };
        match self.expr {
            Expr::Const(c) if *c < 0.0 => write!(f, "(-{:?})", -c),
            Expr::Const(c) => write!(f, "{c:?}"),
            Expr::Var => f.write_str(self.var),
            Expr::Neg(e) => write!(f, "(-{})", sub(e)),
            Expr::Add(l, r) => write!(f, "({} + {})", sub(l), sub(r)),
            Expr::Sub(l, r) => write!(f, "({} - {})", sub(l), sub(r)),
            Expr::Mul(l, r) => write!(f, "({} * {})", sub(l), sub(r)),
            Expr::Div(l, r) => write!(f, "({} / {})", sub(l), sub(r)),
            Expr::Pow(b, e) => write!(f, "({} ^ {})", sub(b), sub(e)),
            Expr::Call(func, a) => write!(f, "{}({})", func.name(), sub(a)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x").fmt(f)
    }
}
