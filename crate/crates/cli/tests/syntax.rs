use proptest::prelude::*;
use sizecalc::syntax::{parse, parse_set, parse_size, Expr, FExpr, Lit, Rat, SetExpr, SizeExpr};

const FIXTURES: &[&str] = &[
    "N",
    "N0 | Z",
    "Q+ & interval(0,1]",
    "M(3) & E",
    "E x O",
    "(N x N) x N",
    "N x (N x N)",
    "N \\ (E \\ O)",
    "N \\ E \\ O",
    "(E | O) & P",
    "finite{}",
    "finite{1,2,3}",
    "finite{-1/2,3/4,7}",
    "finite{(1,2),(3,1/2)}",
    "image(m^2)",
    "image(2*m^3 + m + 5)",
    "image(3^m)",
    "interval(-7/3,1/2]",
    "sigma(N x N)",
    "chi(S)",
    "alpha * alpha + 1",
    "(alpha + 1) * phi",
    "alpha - (alpha - 1)",
    "2 * sigma(M(2)) - alpha",
    "meet(sigma(E), sigma(O)) + join(1, chi(I))",
];

#[test]
fn fixtures_round_trip() {
    for src in FIXTURES {
        let e = parse(src).unwrap_or_else(|err| panic!("{src}: {err}"));
        let again = parse(&e.to_string()).unwrap();
        assert_eq!(e, again, "{src} -> {e}");
    }
}

#[test]
fn documented_parses() {
    assert!(matches!(parse("sigma(N x N)").unwrap(), Expr::Size(SizeExpr::Sigma(SetExpr::Product(..)))));
    assert_eq!(
        parse_set("M(3) & E").unwrap(),
        SetExpr::Inter(Box::new(SetExpr::Multiples(3)), Box::new(parse_set("E").unwrap()))
    );
    let err = parse("N x").unwrap_err();
    assert_eq!(err.offset, 3);
    assert!(err.to_string().contains("expected a set"), "{err}");
}

fn rat() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..9).prop_map(|(n, d)| Rat::new(n, d))
}

fn lit() -> impl Strategy<Value = Lit> {
    rat()
        .prop_map(Lit::Num)
        .prop_recursive(2, 4, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Lit::Pair(Box::new(a), Box::new(b))))
}

fn fexpr() -> impl Strategy<Value = FExpr> {
    prop_oneof![
        (2u64..9).prop_map(FExpr::Exp),
        (proptest::collection::vec(0u64..5, 1..4), 1u64..5).prop_map(|(mut c, top)| {
            c.push(top);
            FExpr::Poly(c)
        }),
    ]
}

fn set_expr() -> impl Strategy<Value = SetExpr> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["N", "N0", "Z", "Q", "Q+", "I", "E", "O", "P", "S"])
            .prop_map(|s| parse_set(s).unwrap()),
        (1u64..50).prop_map(SetExpr::Multiples),
        proptest::collection::vec(lit(), 0..4).prop_map(SetExpr::Finite),
        fexpr().prop_map(SetExpr::Image),
        (rat(), 1i64..20).prop_map(|(lo, w)| SetExpr::Interval(lo, lo + Rat::new(w, 3))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        (inner.clone(), inner, 0..4u8).prop_map(|(a, b, op)| {
            let (a, b) = (Box::new(a), Box::new(b));
            match op {
                0 => SetExpr::Union(a, b),
                1 => SetExpr::Inter(a, b),
                2 => SetExpr::Diff(a, b),
                _ => SetExpr::Product(a, b),
            }
        })
    })
}

fn size_expr() -> impl Strategy<Value = SizeExpr> {
    let leaf = prop_oneof![
        (0u64..1000).prop_map(SizeExpr::Int),
        Just(SizeExpr::Alpha),
        Just(SizeExpr::Phi),
        set_expr().prop_map(SizeExpr::Sigma),
        set_expr().prop_map(SizeExpr::Chi),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        (inner.clone(), inner, 0..5u8).prop_map(|(a, b, op)| {
            let (a, b) = (Box::new(a), Box::new(b));
            match op {
                0 => SizeExpr::Add(a, b),
                1 => SizeExpr::Sub(a, b),
                2 => SizeExpr::Mul(a, b),
                3 => SizeExpr::Meet(a, b),
                _ => SizeExpr::Join(a, b),
            }
        })
    })
}

proptest! {
    #[test]
    fn rendered_sets_parse_back(e in set_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_set(&text).unwrap(), e.clone());
        prop_assert_eq!(parse(&text).unwrap(), Expr::Set(e));
    }

    #[test]
    fn rendered_sizes_parse_back(e in size_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_size(&text).unwrap(), e.clone());
        prop_assert_eq!(parse(&text).unwrap(), Expr::Size(e));
    }

    #[test]
    fn truncated_input_reports_an_offset_inside_it(e in size_expr(), cut in 0.0f64..1.0) {
        let text = e.to_string();
        let at = text.char_indices().map(|(i, _)| i).nth((cut * text.chars().count() as f64) as usize).unwrap_or(0);
        if let Err(err) = parse(&text[..at]) {
            prop_assert!(err.offset <= at);
        }
    }
}
