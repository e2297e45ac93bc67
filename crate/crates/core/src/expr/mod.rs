//! Scalar expression language for metric entries and field components.
//!
//! Expressions are parsed against a chart (coordinate names) and a list of
//! parameter names, and evaluated as order-2 [`Jet`]s so that first and second
//! partial derivatives come out exactly rather than by finite differences.
//!
//! Grammar, from loosest to tightest binding:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := primary ('^' unary)?          // right-associative
//! primary := number | coord | param | pi | e | func '(' sum ')' | '(' sum ')'
//! ```

mod jet;
mod parser;

pub use jet::Jet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol `{name}` at byte {offset}")]
    UnknownSymbol { name: String, offset: usize },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("exponent at byte {offset} must be constant when the base depends on coordinates")]
    NonConstantExponent { offset: usize },
    #[error("domain error: {function} of {argument} in `{subexpr}`")]
    Domain {
        function: &'static str,
        argument: f64,
        subexpr: String,
    },
    #[error("expected {expected} coordinate values, got {got}")]
    PointDimension { expected: usize, got: usize },
    #[error("parameter #{index} is not bound")]
    UnboundParameter { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Function {
    pub const ALL: [Function; 10] = [
        Function::Sin,
        Function::Cos,
        Function::Tan,
        Function::Sinh,
        Function::Cosh,
        Function::Tanh,
        Function::Exp,
        Function::Log,
        Function::Sqrt,
        Function::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Sinh => "sinh",
            Function::Cosh => "cosh",
            Function::Tanh => "tanh",
            Function::Exp => "exp",
            Function::Log => "log",
            Function::Sqrt => "sqrt",
            Function::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// `(f(u), f'(u), f''(u))`, or `None` outside the differentiable domain.
    fn derivatives(self, u: f64) -> Option<(f64, f64, f64)> {
        Some(match self {
            Function::Sin => (u.sin(), u.cos(), -u.sin()),
            Function::Cos => (u.cos(), -u.sin(), -u.cos()),
            Function::Tan => {
                if u.cos().abs() < 1e-300 {
                    return None;
                }
                let t = u.tan();
                let sec2 = 1.0 + t * t;
                (t, sec2, 2.0 * t * sec2)
            }
            Function::Sinh => (u.sinh(), u.cosh(), u.sinh()),
            Function::Cosh => (u.cosh(), u.sinh(), u.cosh()),
            Function::Tanh => {
                let t = u.tanh();
                let d = 1.0 - t * t;
                (t, d, -2.0 * t * d)
            }
            Function::Exp => {
                let e = u.exp();
                (e, e, e)
            }
            Function::Log => {
                if u <= 0.0 {
                    return None;
                }
                (u.ln(), 1.0 / u, -1.0 / (u * u))
            }
            Function::Sqrt => {
                if u <= 0.0 {
                    return None;
                }
                let s = u.sqrt();
                (s, 0.5 / s, -0.25 / (u * s))
            }
            Function::Abs => {
                if u == 0.0 {
                    return None;
                }
                (u.abs(), u.signum(), 0.0)
            }
        })
    }
}

/// Parsed scalar expression. Coordinates and parameters are stored by index
/// into the chart and parameter lists the expression was parsed against.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarExpr {
    Number(f64),
    Coord(usize),
    Param(usize),
    Pi,
    E,
    Neg(Box<ScalarExpr>),
    Binary(BinaryOp, Box<ScalarExpr>, Box<ScalarExpr>),
    Call(Function, Box<ScalarExpr>),
}

/// Parses `text` against the given chart and parameter names.
pub fn parse(text: &str, coords: &[String], params: &[String]) -> Result<ScalarExpr, ExprError> {
    parser::Parser::new(text, coords, params)?.parse_all()
}

impl ScalarExpr {
    /// True when the expression contains no coordinate symbol.
    pub fn is_chart_constant(&self) -> bool {
        match self {
            ScalarExpr::Coord(_) => false,
            ScalarExpr::Number(_) | ScalarExpr::Param(_) | ScalarExpr::Pi | ScalarExpr::E => true,
            ScalarExpr::Neg(a) | ScalarExpr::Call(_, a) => a.is_chart_constant(),
            ScalarExpr::Binary(_, a, b) => a.is_chart_constant() && b.is_chart_constant(),
        }
    }

    /// True when the expression is the literal zero (after parsing, so `0`, `0.0`, `-0`).
    pub fn is_literal_zero(&self) -> bool {
        match self {
            ScalarExpr::Number(v) => *v == 0.0,
            ScalarExpr::Neg(a) => a.is_literal_zero(),
            _ => false,
        }
    }

    /// Value-only evaluation.
    pub fn evaluate(&self, point: &[f64], params: &[f64]) -> Result<f64, ExprError> {
        Ok(self.evaluate_jet(point, params)?.value())
    }

    /// Exact value, gradient and Hessian with respect to the chart coordinates.
    pub fn evaluate_jet(&self, point: &[f64], params: &[f64]) -> Result<Jet, ExprError> {
        self.jet(point.len(), point, params)
    }

    fn jet(&self, n: usize, point: &[f64], params: &[f64]) -> Result<Jet, ExprError> {
        let domain = |function: &'static str, argument: f64, e: &ScalarExpr| ExprError::Domain {
            function,
            argument,
            subexpr: e.to_source(&indexed_names("x", n), &indexed_names("p", params.len())),
        };
        Ok(match self {
            ScalarExpr::Number(v) => Jet::constant(n, *v),
            ScalarExpr::Pi => Jet::constant(n, std::f64::consts::PI),
            ScalarExpr::E => Jet::constant(n, std::f64::consts::E),
            ScalarExpr::Coord(k) => {
                if *k >= n {
                    return Err(ExprError::PointDimension { expected: k + 1, got: n });
                }
                Jet::variable(n, *k, point[*k])
            }
            ScalarExpr::Param(k) => {
                let v = params.get(*k).ok_or(ExprError::UnboundParameter { index: *k })?;
                Jet::constant(n, *v)
            }
            ScalarExpr::Neg(a) => -&a.jet(n, point, params)?,
            ScalarExpr::Call(f, a) => {
                let u = a.jet(n, point, params)?;
                let (f0, f1, f2) = f
                    .derivatives(u.value())
                    .ok_or_else(|| domain(f.name(), u.value(), self))?;
                u.compose(f0, f1, f2)
            }
            ScalarExpr::Binary(op, a, b) => {
                let u = a.jet(n, point, params)?;
                match op {
                    BinaryOp::Add => &u + &b.jet(n, point, params)?,
                    BinaryOp::Sub => &u - &b.jet(n, point, params)?,
                    BinaryOp::Mul => &u * &b.jet(n, point, params)?,
                    BinaryOp::Div => {
                        let v = b.jet(n, point, params)?;
                        if v.value() == 0.0 {
                            return Err(domain("division", 0.0, self));
                        }
                        &u * &v.recip()
                    }
                    BinaryOp::Pow => {
                        if b.is_chart_constant() {
                            let c = b.jet(n, point, params)?.value();
                            power_constant_exponent(&u, c).ok_or_else(|| domain("power", u.value(), self))?
                        } else {
                            // constant base, varying exponent: b^v = exp(v ln b)
                            let base = u.value();
                            if base <= 0.0 {
                                return Err(domain("power", base, self));
                            }
                            let v = b.jet(n, point, params)?;
                            let lb = base.ln();
                            let f0 = base.powf(v.value());
                            v.compose(f0, lb * f0, lb * lb * f0)
                        }
                    }
                }
            }
        })
    }

    /// Renders the expression in the surface syntax with minimal parentheses.
    pub fn to_source(&self, coords: &[String], params: &[String]) -> String {
        let mut out = String::new();
        self.write_source(&mut out, coords, params, 0);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            ScalarExpr::Binary(BinaryOp::Add | BinaryOp::Sub, ..) => 1,
            ScalarExpr::Binary(BinaryOp::Mul | BinaryOp::Div, ..) => 2,
            ScalarExpr::Neg(_) => 3,
            ScalarExpr::Number(v) if *v < 0.0 || v.is_sign_negative() => 3,
            ScalarExpr::Binary(BinaryOp::Pow, ..) => 4,
            _ => 5,
        }
    }

    fn write_source(&self, out: &mut String, coords: &[String], params: &[String], min_prec: u8) {
        let paren = self.precedence() < min_prec;
        if paren {
            out.push('(');
        }
        match self {
            ScalarExpr::Number(v) => {
                if v.is_sign_negative() {
                    out.push('-');
                    out.push_str(&format!("{}", -v));
                } else {
                    out.push_str(&format!("{v}"));
                }
            }
            ScalarExpr::Coord(k) => out.push_str(coords.get(*k).map_or("?", String::as_str)),
            ScalarExpr::Param(k) => out.push_str(params.get(*k).map_or("?", String::as_str)),
            ScalarExpr::Pi => out.push_str("pi"),
            ScalarExpr::E => out.push('e'),
            ScalarExpr::Neg(a) => {
                out.push('-');
                a.write_source(out, coords, params, 3);
            }
            ScalarExpr::Call(f, a) => {
                out.push_str(f.name());
                out.push('(');
                a.write_source(out, coords, params, 0);
                out.push(')');
            }
            ScalarExpr::Binary(op, a, b) => {
                let (sym, lp, rp) = match op {
                    BinaryOp::Add => (" + ", 1, 2),
                    BinaryOp::Sub => (" - ", 1, 2),
                    BinaryOp::Mul => ("*", 2, 3),
                    BinaryOp::Div => ("/", 2, 3),
                    BinaryOp::Pow => ("^", 5, 3),
                };
                a.write_source(out, coords, params, lp);
                out.push_str(sym);
                b.write_source(out, coords, params, rp);
            }
        }
        if paren {
            out.push(')');
        }
    }
}

fn power_constant_exponent(u: &Jet, c: f64) -> Option<Jet> {
    let x = u.value();
    if c == 0.0 {
        return Some(Jet::constant(u.dim(), 1.0));
    }
    if c.fract() == 0.0 && c.abs() < 1e9 {
        let k = c as i32;
        if x == 0.0 && k < 0 {
            return None;
        }
        let f1 = c * x.powi(k - 1);
        let f2 = if k == 1 { 0.0 } else { c * (c - 1.0) * x.powi(k - 2) };
        return Some(u.compose(x.powi(k), f1, f2));
    }
    if x <= 0.0 {
        return None;
    }
    Some(u.compose(x.powf(c), c * x.powf(c - 1.0), c * (c - 1.0) * x.powf(c - 2.0)))
}

fn indexed_names(prefix: &str, count: usize) -> Vec<String> {
    (0..count).map(|k| format!("{prefix}{k}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn zero_literal() {
        assert_eq!(parse("0", &names(&["t"]), &[]).unwrap(), ScalarExpr::Number(0.0));
    }

    #[test]
    fn negative_one_is_negation_of_literal() {
        let chart = names(&["t", "x", "y", "z"]);
        assert_eq!(
            parse("-1", &chart, &[]).unwrap(),
            ScalarExpr::Neg(Box::new(ScalarExpr::Number(1.0)))
        );
    }

    #[test]
    fn parameter_and_unknown_symbol() {
        let chart = names(&["t", "x", "y", "z"]);
        let params = names(&["H"]);
        let e = parse("exp(2*H*t)", &chart, &params).unwrap();
        let expected = ScalarExpr::Call(
            Function::Exp,
            Box::new(ScalarExpr::Binary(
                BinaryOp::Mul,
                Box::new(ScalarExpr::Binary(
                    BinaryOp::Mul,
                    Box::new(ScalarExpr::Number(2.0)),
                    Box::new(ScalarExpr::Param(0)),
                )),
                Box::new(ScalarExpr::Coord(0)),
            )),
        );
        assert_eq!(e, expected);
        match parse("exp(2*H*s)", &chart, &params) {
            Err(ExprError::UnknownSymbol { name, offset }) => {
                assert_eq!(name, "s");
                assert_eq!(offset, 8);
            }
            other => panic!("expected unknown symbol, got {other:?}"),
        }
    }

    #[test]
    fn unknown_function_is_named() {
        let chart = names(&["t"]);
        match parse("ex(t)", &chart, &[]) {
            Err(ExprError::UnknownFunction { name, .. }) => assert_eq!(name, "ex"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let chart = names(&["x"]);
        let eval = |s: &str| parse(s, &chart, &[]).unwrap().evaluate(&[3.0], &[]).unwrap();
        assert_eq!(eval("-x^2"), -9.0);
        assert_eq!(eval("2^3^2"), 512.0);
        assert_eq!(eval("10 - 4 - 3"), 3.0);
        assert_eq!(eval("24 / 4 / 2"), 3.0);
        assert_eq!(eval("1 + 2*x"), 7.0);
        assert_eq!(eval("2^-1"), 0.5);
        assert_eq!(eval("-2*x"), -6.0);
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        let chart = names(&["x"]);
        match parse("1 + * x", &chart, &[]) {
            Err(ExprError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("(x + 1", &chart, &[]), Err(ExprError::Syntax { offset: 6, .. })));
        assert!(matches!(parse("", &chart, &[]), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("x $ 2", &chart, &[]), Err(ExprError::Syntax { offset: 2, .. })));
    }

    #[test]
    fn non_constant_exponent_rejected() {
        let chart = names(&["t", "x"]);
        assert!(matches!(parse("t^x", &chart, &[]), Err(ExprError::NonConstantExponent { .. })));
        assert!(parse("2^x", &chart, &[]).is_ok());
        assert!(parse("t^(1/2)", &chart, &[]).is_ok());
    }

    #[test]
    fn polynomial_jet() {
        let e = parse("t^2", &names(&["t"]), &[]).unwrap();
        let j = e.evaluate_jet(&[3.0], &[]).unwrap();
        assert_eq!(j.value(), 9.0);
        assert_eq!(j.gradient(), &[6.0]);
        assert_eq!(j.hessian(0, 0), 2.0);
    }

    #[test]
    fn exp_sin_jet() {
        let e = parse("exp(t)*sin(x)", &names(&["t", "x"]), &[]).unwrap();
        let j = e.evaluate_jet(&[0.0, 0.0], &[]).unwrap();
        assert_eq!(j.value(), 0.0);
        assert_eq!(j.gradient(), &[0.0, 1.0]);
        assert_eq!(j.hessian_matrix(), vec![0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn domain_errors() {
        let chart = names(&["x"]);
        let e = parse("log(x - 1)", &chart, &[]).unwrap();
        match e.evaluate_jet(&[0.5], &[]) {
            Err(ExprError::Domain { function, subexpr, .. }) => {
                assert_eq!(function, "log");
                assert_eq!(subexpr, "log(x0 - 1)");
            }
            other => panic!("{other:?}"),
        }
        let s = parse("sqrt(x)", &chart, &[]).unwrap();
        assert!(s.evaluate_jet(&[-1.0], &[]).is_err());
        let d = parse("1/x", &chart, &[]).unwrap();
        assert!(d.evaluate_jet(&[0.0], &[]).is_err());
        let p = parse("x^0.5", &chart, &[]).unwrap();
        assert!(p.evaluate_jet(&[-2.0], &[]).is_err());
        let q = parse("x^3", &chart, &[]).unwrap();
        assert_eq!(q.evaluate(&[-2.0], &[]).unwrap(), -8.0);
    }

    #[test]
    fn unbound_parameter() {
        let e = parse("a*x", &names(&["x"]), &names(&["a"])).unwrap();
        assert_eq!(e.evaluate(&[1.0], &[]), Err(ExprError::UnboundParameter { index: 0 }));
        assert_eq!(e.evaluate(&[2.0], &[4.0]).unwrap(), 8.0);
    }

    #[test]
    fn printer_uses_minimal_parentheses() {
        let chart = names(&["t", "x"]);
        for (src, printed) in [
            ("(t + x)*2", "(t + x)*2"),
            ("t - (x - 1)", "t - (x - 1)"),
            ("-(t^2)", "-t^2"),
            ("(-t)^2", "(-t)^2"),
            ("2^(3^t)", "2^3^t"),
            ("exp(-t)/(1 + x)", "exp(-t)/(1 + x)"),
        ] {
            let e = parse(src, &chart, &[]).unwrap();
            assert_eq!(e.to_source(&chart, &[]), printed);
            assert_eq!(parse(printed, &chart, &[]).unwrap(), e);
        }
    }
}
