//! Complex-analytic expressions in one variable `z`.
//!
//! Grammar (EBNF):
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = ("-" | "+") unary | power ;
//! power    = atom [ "^" exponent ] ;
//! exponent = [ "-" | "+" ] integer | "(" [ "-" | "+" ] integer ")" ;
//! atom     = number | "z" | "i" | "pi" | "e"
//!          | func "(" expr ")" | "(" expr ")" ;
//! func     = "exp" | "log" | "sin" | "cos" | "sqrt" ;
//! number   = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ] ;
//! ```
//!
//! `log` and `sqrt` use the principal branch. Evaluating at a pole, at a
//! branch point of `log`, or on a branch cut yields [`Singular`] rather than a
//! non-finite number.

mod diff;
mod parse;

use std::fmt;

use num_complex::Complex64;

pub use parse::parse_expr;

/// Built-in functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// Expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Real decimal literal.
    Num(f64),
    /// The imaginary unit.
    I,
    Pi,
    E,
    /// The variable `z`.
    Z,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

/// Marker for evaluation at a pole, branch point or branch cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Singular;

impl fmt::Display for Singular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("singular value")
    }
}

impl std::error::Error for Singular {}

fn finite(w: Complex64) -> Result<Complex64, Singular> {
    if w.is_finite() {
        Ok(w)
    } else {
        Err(Singular)
    }
}

fn on_negative_axis(w: Complex64) -> bool {
    w.im == 0.0 && w.re < 0.0
}

impl Expr {
    /// Evaluates at `z`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, Singular> {
        let w = match self {
            Expr::Num(x) => Complex64::new(*x, 0.0),
            Expr::I => Complex64::new(0.0, 1.0),
            Expr::Pi => Complex64::new(std::f64::consts::PI, 0.0),
            Expr::E => Complex64::new(std::f64::consts::E, 0.0),
            Expr::Z => z,
            Expr::Neg(a) => -a.eval(z)?,
            Expr::Add(a, b) => a.eval(z)? + b.eval(z)?,
            Expr::Sub(a, b) => a.eval(z)? - b.eval(z)?,
            Expr::Mul(a, b) => a.eval(z)? * b.eval(z)?,
            Expr::Div(a, b) => {
                let den = b.eval(z)?;
                if den.norm_sqr() == 0.0 {
                    return Err(Singular);
                }
                a.eval(z)? / den
            }
            Expr::Pow(a, n) => {
                let base = a.eval(z)?;
                if *n < 0 && base.norm_sqr() == 0.0 {
                    return Err(Singular);
                }
                base.powi(*n)
            }
            Expr::Call(f, a) => {
                let w = a.eval(z)?;
                match f {
                    Func::Exp => w.exp(),
                    Func::Sin => w.sin(),
                    Func::Cos => w.cos(),
                    Func::Log => {
                        if w.norm_sqr() == 0.0 || on_negative_axis(w) {
                            return Err(Singular);
                        }
                        w.ln()
                    }
                    Func::Sqrt => {
                        if on_negative_axis(w) {
                            return Err(Singular);
                        }
                        w.sqrt()
                    }
                }
            }
        };
        finite(w)
    }

    /// Symbolic complex derivative d/dz.
    pub fn differentiate(&self) -> Expr {
        diff::derivative(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

/// Canonical printer; the output parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Children are parenthesized unless they bind strictly tighter, and the
        // right operand of a left-associative operator also when equal.
        let child = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() >= min {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        };
        match self {
            Expr::Num(x) => write!(f, "{x:?}"),
            Expr::I => f.write_str("i"),
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::Z => f.write_str("z"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                child(f, a, 4)
            }
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                f.write_str(" + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                f.write_str(" - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                f.write_str("*")?;
                child(f, b, 3)
            }
            Expr::Div(a, b) => {
                child(f, a, 2)?;
                f.write_str("/")?;
                child(f, b, 3)
            }
            Expr::Pow(a, n) => {
                child(f, a, 5)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// An expression bundled with its source text.
#[derive(Debug, Clone)]
pub struct ComplexExpr {
    source: String,
    tree: Expr,
}

impl ComplexExpr {
    pub fn parse(source: &str) -> crate::Result<Self> {
        Ok(Self {
            source: source.to_string(),
            tree: parse_expr(source)?,
        })
    }

    pub fn from_tree(tree: Expr) -> Self {
        Self {
            source: tree.to_string(),
            tree,
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn tree(&self) -> &Expr {
        &self.tree
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, Singular> {
        self.tree.eval(z)
    }

    pub fn differentiate(&self) -> ComplexExpr {
        Self::from_tree(self.tree.differentiate())
    }
}
