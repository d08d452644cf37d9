use bvw::dsl::{parse_expr, Expr, Pos};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn ident(name: &str, indices: Vec<Expr>) -> Expr {
    Expr::Ident { name: name.to_string(), indices, pos: Pos { line: 1, col: 1 } }
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Num(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        prop::sample::select(vec!["x", "y", "z", "C1", "B2"]).prop_map(|n| ident(n, vec![])),
        (0i64..4, 0i64..4).prop_map(|(t, x)| ident(
            "phi",
            vec![Expr::Num(BigInt::from(t).into()), Expr::Num(BigInt::from(x).into())]
        )),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 0i64..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), Box::new(Expr::Num(BigInt::from(n).into())))),
            (inner.clone(), inner).prop_map(|(lo, body)| Expr::Fold {
                product: false,
                var: "k".into(),
                lo: Box::new(lo),
                hi: Box::new(Expr::Num(BigInt::from(3).into())),
                body: Box::new(body),
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_expressions_parse_back(e in expr()) {
        let printed = e.to_string();
        let parsed = parse_expr(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(&parsed, &e, "{}", printed);
        prop_assert_eq!(parsed.to_string(), printed);
    }
}
