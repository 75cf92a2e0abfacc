use super::{Expr, Func};

pub(super) fn derivative(e: &Expr) -> Expr {
    use Expr as E;
    match e {
        E::Const(_) => E::Const(0.0),
        E::Var => E::Const(1.0),
        E::Neg(u) => E::neg(derivative(u)),
        E::Add(u, v) => E::add(derivative(u), derivative(v)),
        E::Sub(u, v) => E::sub(derivative(u), derivative(v)),
        E::Mul(u, v) => E::add(
            E::mul(derivative(u), v.fold()),
            E::mul(u.fold(), derivative(v)),
        ),
        E::Div(u, v) => {
            // (u'v - uv') / v^2
            let num = E::sub(
                E::mul(derivative(u), v.fold()),
                E::mul(u.fold(), derivative(v)),
            );
            E::div(num, E::pow(v.fold(), E::Const(2.0)))
        }
        E::Pow(base, exponent) => pow_derivative(base, exponent),
        E::Call(f, u) => {
            let du = derivative(u);
            if du.is_zero() {
                return E::Const(0.0);
            }
            let u = u.fold();
            let outer = match f {
                Func::Exp => E::call(Func::Exp, u),
                Func::Sin => E::call(Func::Cos, u),
                Func::Cos => E::neg(E::call(Func::Sin, u)),
                Func::Sqrt => E::div(E::Const(1.0), E::mul(E::Const(2.0), E::call(Func::Sqrt, u))),
                Func::Log => E::div(E::Const(1.0), u),
            };
            E::mul(outer, du)
        }
    }
}

fn pow_derivative(base: &Expr, exponent: &Expr) -> Expr {
    use Expr as E;
    let db = derivative(base);
    let de = derivative(exponent);
    let b = base.fold();
    let n = exponent.fold();
    if de.is_zero() {
        // n * b^(n-1) * b'
        if db.is_zero() {
            return E::Const(0.0);
        }
        let lowered = E::pow(b, E::sub(n.clone(), E::Const(1.0)));
        return E::mul(E::mul(n, lowered), db);
    }
    if db.is_zero() {
        // b^v = exp(v ln b): d/dx = ln(b) * b^v * v'
        return E::mul(E::mul(E::call(Func::Log, b.clone()), E::pow(b, n)), de);
    }
    // b^v * (v' ln b + v b'/b)
    let inner = E::add(
        E::mul(de, E::call(Func::Log, b.clone())),
        E::div(E::mul(n.clone(), db), b.clone()),
    );
    E::mul(E::pow(b, n), inner)
}
