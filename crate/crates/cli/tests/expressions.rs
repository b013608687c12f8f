use boole_cli::expr::{parse_expression, Expr, Func};
use proptest::prelude::*;

fn ast() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Var),
        (0u32..1000).prop_map(|n| Expr::Const(n as f64)),
        (0.0f64..1e6).prop_map(Expr::Const),
        (1e-9f64..1e-3).prop_map(Expr::Const),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        let func = prop::sample::select(vec![Func::Sin, Func::Cos, Func::Exp, Func::Log]);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Add(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Sub(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Mul(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::Div(Box::new(x), Box::new(y))),
            (inner.clone(), -5i32..=5).prop_map(|(x, k)| Expr::Pow(Box::new(x), k)),
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            (func, inner).prop_map(|(f, x)| Expr::Call(f, Box::new(x))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_then_parse_is_identity(e in ast()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expression(&text).unwrap(), e, "{}", text);
    }
}

const CORPUS: [&str; 50] = [
    "t",
    "1",
    "0.5",
    "1e-3",
    "2.5e2",
    "t^4",
    "t^0",
    "t^-1",
    "-t",
    "--t",
    "-t^2",
    "-(t^2)",
    "t + 1",
    "t - 1",
    "1 - t",
    "2*t",
    "t/2",
    "t*t*t",
    "t/t/t",
    "(t + 1)^2",
    "(t - 1)*(t + 1)",
    "t - (t - 1)",
    "t - t - 1",
    "(t^2)^3",
    "((t^2))^1",
    "sin(t)",
    "cos(t)",
    "exp(t)",
    "log(t + 2)",
    "sin(t)^2 + cos(t)^2",
    "exp(-t^2)",
    "exp(-(t^2))",
    "1/(1 + t^2)",
    "log(exp(t))",
    "sin(cos(exp(t)))",
    "7*t^2 - 3*(t + 1)",
    "t^5 - 4*t^3 + t",
    "(1 + t)/(2 - t/10)",
    "-(t + 1)*2",
    "3.25*t^-2 + 1",
    "exp(1) - 1",
    "exp(t)*sin(t)",
    "t*exp(-t)",
    "(t)",
    "((t))",
    "-(-(t))",
    "sin(-t)",
    "cos(t)^-2",
    "2^3",
    "0.001*t^10",
];

#[test]
fn corpus_round_trips() {
    for src in CORPUS {
        let e = parse_expression(src).unwrap_or_else(|err| panic!("{src}: {err}"));
        let text = e.to_string();
        assert_eq!(parse_expression(&text).unwrap(), e, "{src} -> {text}");
        assert_eq!(parse_expression(&text).unwrap().to_string(), text);
        for t in [0.25, 0.5, 1.5] {
            let (x, y) = (e.eval(t), parse_expression(&text).unwrap().eval(t));
            assert_eq!(x.ok(), y.ok(), "{src} at {t}");
        }
    }
}

#[test]
fn corpus_values() {
    let at = |src: &str, t: f64| parse_expression(src).unwrap().eval(t).unwrap();
    assert_eq!(at("-t^2", 3.0), 9.0);
    assert_eq!(at("-(t^2)", 3.0), -9.0);
    assert_eq!(at("t - t - 1", 5.0), -1.0);
    assert_eq!(at("((t^2))^1", 3.0), 9.0);
    // exponents do not chain
    assert!(parse_expression("t^2^1").is_err());
    assert_eq!(at("2^3", 0.0), 8.0);
    assert!((at("sin(t)^2 + cos(t)^2", 0.7) - 1.0).abs() < 1e-15);
    assert_eq!(at("t^-1", 4.0), 0.25);
}
