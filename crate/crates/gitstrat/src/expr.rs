//! JSON encoding of recipe expressions.
//!
//! Leaves are strings: a coordinate label `x452`, its negation `-x452`, or a
//! rational literal such as `0` or `-3/2`. Inner nodes are one-key objects:
//! `add`, `mul` (lists), `neg`, `pow` (`[expr, k]`), `det`, `pfaffian`
//! (matrices), `var` (an index), `const` (`{"num", "den"}`),
//! `disc_binary` (`{form, degree}`), `disc_quadratic` (`{form, vars, anchor}`)
//! and `call` (`{name, args}`).

use crate::model::{label_ordinal, parse_rat, InputError, RatRepr};
use gitstrat_core::invariants::recipe::Expr;
use gitstrat_core::exact::Rat;
use gitstrat_core::rep::RepSpec;
use serde_json::Value;

fn err(msg: impl Into<String>) -> InputError {
    InputError::schema(msg)
}

fn list<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| err(format!("{what}: expected a list")))
}

fn matrix(v: &Value, rep: &RepSpec) -> Result<Vec<Vec<Expr>>, InputError> {
    list(v, "matrix")?.iter().map(|r| list(r, "matrix row")?.iter().map(|e| parse_expr(e, rep)).collect()).collect()
}

fn uint(v: &Value, what: &str) -> Result<u64, InputError> {
    v.as_u64().ok_or_else(|| err(format!("{what}: expected a non-negative integer")))
}

fn leaf(s: &str, rep: &RepSpec) -> Result<Expr, InputError> {
    let s = s.trim();
    if let Some(l) = s.strip_prefix("-x") {
        return Ok(Expr::Neg(Box::new(Expr::Coord(label_ordinal(rep, l)?))));
    }
    if s.starts_with('x') {
        return Ok(Expr::Coord(label_ordinal(rep, s)?));
    }
    Ok(Expr::Const(parse_rat(s)?))
}

/// Parses an expression over the coordinates of `rep`.
pub fn parse_expr(v: &Value, rep: &RepSpec) -> Result<Expr, InputError> {
    match v {
        Value::String(s) => leaf(s, rep),
        Value::Number(n) => {
            let k = n.as_i64().ok_or_else(|| err(format!("non-integral number {n}")))?;
            Ok(Expr::Const(Rat::from_integer(k.into())))
        }
        Value::Object(m) if m.len() == 1 => {
            let (key, body) = m.iter().next().expect("one entry");
            let parse_list = |what: &str| -> Result<Vec<Expr>, InputError> {
                list(body, what)?.iter().map(|e| parse_expr(e, rep)).collect()
            };
            let field = |name: &str| body.get(name).ok_or_else(|| err(format!("{key}: missing field {name:?}")));
            Ok(match key.as_str() {
                "add" => Expr::Add(parse_list("add")?),
                "mul" => Expr::Mul(parse_list("mul")?),
                "neg" => Expr::Neg(Box::new(parse_expr(body, rep)?)),
                "pow" => {
                    let p = list(body, "pow")?;
                    if p.len() != 2 {
                        return Err(err("pow: expected [expr, exponent]"));
                    }
                    let k = u32::try_from(uint(&p[1], "pow")?).map_err(|_| err("pow: exponent too large"))?;
                    Expr::Pow(Box::new(parse_expr(&p[0], rep)?), k)
                }
                "det" => Expr::Det(matrix(body, rep)?),
                "pfaffian" => Expr::Pfaffian(matrix(body, rep)?),
                "var" => Expr::Var(uint(body, "var")? as usize),
                "const" => {
                    let r: RatRepr = serde_json::from_value(body.clone()).map_err(|e| err(format!("const: {e}")))?;
                    Expr::Const(r.to_rat()?)
                }
                "disc_binary" => {
                    let d = u32::try_from(uint(field("degree")?, "degree")?).map_err(|_| err("degree too large"))?;
                    Expr::DiscBinary(Box::new(parse_expr(field("form")?, rep)?), d)
                }
                "disc_quadratic" => Expr::DiscQuadratic {
                    form: Box::new(parse_expr(field("form")?, rep)?),
                    vars: uint(field("vars")?, "vars")? as usize,
                    anchor: Box::new(parse_expr(field("anchor")?, rep)?),
                },
                "call" => {
                    let name = field("name")?.as_str().ok_or_else(|| err("call: name must be a string"))?.to_string();
                    let args = list(field("args")?, "args")?.iter().map(|e| parse_expr(e, rep)).collect::<Result<_, _>>()?;
                    Expr::Call { name, args }
                }
                other => return Err(err(format!("unknown expression node {other:?}"))),
            })
        }
        other => Err(err(format!("malformed expression {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gitstrat_core::exact::{rat, ri};
    use gitstrat_core::invariants::recipe::eval_expr;
    use serde_json::json;

    #[test]
    fn leaves_and_nodes() {
        let rep = RepSpec::flagship();
        assert_eq!(parse_expr(&json!("x121"), &rep).unwrap(), Expr::Coord(1));
        assert_eq!(parse_expr(&json!("-x454"), &rep).unwrap(), Expr::Neg(Box::new(Expr::Coord(40))));
        assert_eq!(parse_expr(&json!("-3/6"), &rep).unwrap(), Expr::Const(rat(-1, 2)));
        assert_eq!(parse_expr(&json!(2), &rep).unwrap(), Expr::Const(ri(2)));
        let e = json!({"mul": [{"pow": ["x121", 2]}, {"const": {"num": "3", "den": "1"}}]});
        let mut x = vec![ri(0); 40];
        x[0] = ri(2);
        assert_eq!(eval_expr(&parse_expr(&e, &rep).unwrap(), &x).unwrap(), gitstrat_core::poly::Poly::constant(ri(12)));
        let d = json!({"det": [["x121", "0"], ["0", "x454"]]});
        assert!(matches!(parse_expr(&d, &rep).unwrap(), Expr::Det(_)));
        let q = json!({"disc_binary": {"form": {"var": 0}, "degree": 2}});
        assert!(matches!(parse_expr(&q, &rep).unwrap(), Expr::DiscBinary(_, 2)));
        let c = json!({"call": {"name": "p_222", "args": ["x121"]}});
        assert!(matches!(parse_expr(&c, &rep).unwrap(), Expr::Call { .. }));
    }

    #[test]
    fn malformed_expressions() {
        let rep = RepSpec::flagship();
        for bad in [
            json!("x999"),
            json!("hello"),
            json!({"pow": ["x121"]}),
            json!({"frobnicate": []}),
            json!({"add": 3}),
            json!({"mul": [], "add": []}),
            json!(1.5),
            json!(null),
            json!({"call": {"name": 3, "args": []}}),
        ] {
            assert!(parse_expr(&bad, &rep).is_err(), "{bad}");
        }
    }
}
