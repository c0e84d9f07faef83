use super::{Expr, Func};

fn num(x: f64) -> Expr {
    Expr::Num(x)
}

fn is_num(e: &Expr, x: f64) -> bool {
    matches!(e, Expr::Num(v) if *v == x)
}

fn add(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        _ if is_num(&a, 0.0) => b,
        _ if is_num(&b, 0.0) => a,
        (Expr::Num(x), Expr::Num(y)) => num(x + y),
        _ => Expr::Add(Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_num(&b, 0.0) {
        a
    } else if is_num(&a, 0.0) {
        neg(b)
    } else {
        Expr::Sub(Box::new(a), Box::new(b))
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(x) if x == 0.0 => num(0.0),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        _ if is_num(&a, 0.0) || is_num(&b, 0.0) => num(0.0),
        _ if is_num(&a, 1.0) => b,
        _ if is_num(&b, 1.0) => a,
        (Expr::Num(x), Expr::Num(y)) => num(x * y),
        _ => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_num(&a, 0.0) {
        num(0.0)
    } else if is_num(&b, 1.0) {
        a
    } else {
        Expr::Div(Box::new(a), Box::new(b))
    }
}

fn pow(a: Expr, n: i32) -> Expr {
    match n {
        0 => num(1.0),
        1 => a,
        _ => Expr::Pow(Box::new(a), n),
    }
}

fn call(f: Func, a: &Expr) -> Expr {
    Expr::Call(f, Box::new(a.clone()))
}

pub(super) fn derivative(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) | Expr::I | Expr::Pi | Expr::E => num(0.0),
        Expr::Z => num(1.0),
        Expr::Neg(a) => neg(derivative(a)),
        Expr::Add(a, b) => add(derivative(a), derivative(b)),
        Expr::Sub(a, b) => sub(derivative(a), derivative(b)),
        Expr::Mul(a, b) => add(
            mul(derivative(a), (**b).clone()),
            mul((**a).clone(), derivative(b)),
        ),
        Expr::Div(a, b) => div(
            sub(
                mul(derivative(a), (**b).clone()),
                mul((**a).clone(), derivative(b)),
            ),
            pow((**b).clone(), 2),
        ),
        Expr::Pow(a, n) => {
            if *n == 0 {
                return num(0.0);
            }
            mul(
                mul(num(*n as f64), pow((**a).clone(), n - 1)),
                derivative(a),
            )
        }
        Expr::Call(f, a) => {
            let inner = derivative(a);
            let outer = match f {
                Func::Exp => call(Func::Exp, a),
                Func::Log => div(num(1.0), (**a).clone()),
                Func::Sin => call(Func::Cos, a),
                Func::Cos => neg(call(Func::Sin, a)),
                Func::Sqrt => div(num(1.0), mul(num(2.0), call(Func::Sqrt, a))),
            };
            mul(outer, inner)
        }
    }
}
