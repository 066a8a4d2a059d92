mod common;

use common::{any_expr, rng};
use specalc_core::dsl::{parse, parse_expr};

#[test]
fn canonical_printing_round_trips() {
    let mut r = rng(41);
    for _ in 0..500 {
        let e = any_expr(&mut r, 6);
        assert!(e.depth() <= 6);
        let printed = e.to_string();
        let back = parse_expr(&printed).unwrap_or_else(|err| panic!("{printed}: {err}"));
        assert_eq!(back, e, "{printed}");
        assert_eq!(back.to_string(), printed);
    }
}

#[test]
fn every_node_gets_a_span() {
    let mut r = rng(42);
    for _ in 0..100 {
        let e = any_expr(&mut r, 5);
        let prog = parse(&e.to_string()).unwrap();
        fn walk(e: &specalc_core::species::SpeciesExpr, path: specalc_core::species::NodePath, out: &mut Vec<specalc_core::species::NodePath>) {
            for (i, c) in e.children().into_iter().enumerate() {
                walk(c, path.child(i), out);
            }
            out.push(path);
        }
        let mut paths = Vec::new();
        walk(&prog.expr, Default::default(), &mut paths);
        for p in paths {
            let span = prog.spans.get(&p).unwrap_or_else(|| panic!("no span for {p}"));
            let text = &prog.source[span.start..span.end];
            let sub = parse_expr(text).unwrap_or_else(|err| panic!("{text}: {err}"));
            assert_eq!(&sub, prog.expr.at(&p).unwrap());
        }
    }
}

#[test]
fn whitespace_is_insignificant() {
    let tight = parse_expr("aprod(C,Lp)+X*X").unwrap();
    let loose = parse_expr("  aprod ( C ,\n Lp )  +  X *\tX ").unwrap();
    assert_eq!(tight, loose);
}
