//! Canonical pretty-printer: single spaces around binary operators, a
//! comma-space in argument lists and set literals, and the minimum
//! parenthesization that reparses to the same tree.

use super::ast::*;

pub fn print_set(e: &SetExpr) -> String {
    print_set_at(e, 1)
}

fn print_set_at(e: &SetExpr, _min: u8) -> String {
    // the set grammar has no parentheses; combinations print flat and the
    // left-associative parser reconstructs the same shape
    match e {
        SetExpr::Literal(points) => {
            let inner: Vec<String> = points.iter().map(|p| p.to_string()).collect();
            format!("{{{}}}", inner.join(", "))
        }
        SetExpr::Prog {
            kind,
            offset,
            period,
        } => {
            let name = match kind {
                ProgKind::AllIntegers => "PROG",
                ProgKind::NonNegative => "PROGP",
                ProgKind::NonPositive => "PROGM",
            };
            format!("{name}({offset}, {period})")
        }
        SetExpr::Union(a, b) => format!(
            "{} U {}",
            print_set_at(&a.node, 1),
            print_set_at(&b.node, 2)
        ),
        SetExpr::SymDiff(a, b) => format!(
            "{} D {}",
            print_set_at(&a.node, 1),
            print_set_at(&b.node, 2)
        ),
    }
}

fn fn_level(e: &FnExpr) -> u8 {
    match e {
        FnExpr::Xor(..) => 1,
        FnExpr::And(..) => 2,
        _ => 3,
    }
}

pub fn print_fn(e: &FnExpr) -> String {
    print_fn_at(e, 1)
}

fn print_fn_at(e: &FnExpr, min: u8) -> String {
    let text = match e {
        FnExpr::Zero => "0".to_string(),
        FnExpr::One => "1".to_string(),
        FnExpr::ChiPoint(t) => format!("CHI{{{t}}}"),
        FnExpr::ChiOpen(a, b) => format!("CHI{{({a}, {b})}}"),
        FnExpr::Xor(a, b) => format!(
            "{} + {}",
            print_fn_at(&a.node, 1),
            print_fn_at(&b.node, 2)
        ),
        FnExpr::And(a, b) => format!(
            "{} * {}",
            print_fn_at(&a.node, 2),
            print_fn_at(&b.node, 3)
        ),
        FnExpr::Translate(tau, f) => format!("TR({tau}, {})", print_fn_at(&f.node, 1)),
        FnExpr::LimitLeft(f) => format!("LIMF-({})", print_fn_at(&f.node, 1)),
        FnExpr::LimitRight(f) => format!("LIMF+({})", print_fn_at(&f.node, 1)),
        FnExpr::DerivLeft(f) => format!("DF-({})", print_fn_at(&f.node, 1)),
        FnExpr::DerivRight(f) => format!("DF+({})", print_fn_at(&f.node, 1)),
    };
    if fn_level(e) < min {
        format!("({text})")
    } else {
        text
    }
}

fn dist_level(e: &DistExpr) -> u8 {
    match e {
        DistExpr::Xor(..) => 1,
        DistExpr::TensorOp(..) | DistExpr::ConvOp(..) => 2,
        DistExpr::Scale(..) => 3,
        _ => 4,
    }
}

pub fn print_dist(e: &DistExpr) -> String {
    print_dist_at(e, 1)
}

fn print_set_arg(set: &SetExpr) -> String {
    // brace literals attach directly (`DELTAL{0}`), composite sets take a
    // separating space (`DELTAL PROG(0, 1) D {0}`)
    match set {
        SetExpr::Literal(_) => print_set(set),
        other => format!(" {}", print_set(other)),
    }
}

fn print_dist_at(e: &DistExpr, min: u8) -> String {
    let text = match e {
        DistExpr::Regular(s) => format!("REG{}", print_set_arg(&s.node)),
        DistExpr::Delta(t) => format!("DELTA({t})"),
        DistExpr::DeltaLeft(s) => format!("DELTAL{}", print_set_arg(&s.node)),
        DistExpr::DeltaRight(s) => format!("DELTAR{}", print_set_arg(&s.node)),
        DistExpr::Parity => "PARITY".to_string(),
        DistExpr::IntDerivLeft => "INTDL".to_string(),
        DistExpr::IntDerivRight => "INTDR".to_string(),
        DistExpr::Xor(a, b) => format!(
            "{} + {}",
            print_dist_at(&a.node, 1),
            print_dist_at(&b.node, 2)
        ),
        DistExpr::TensorOp(a, b) => format!(
            "{} (x) {}",
            print_dist_at(&a.node, 2),
            print_dist_at(&b.node, 3)
        ),
        DistExpr::ConvOp(a, b) => format!(
            "{} (*) {}",
            print_dist_at(&a.node, 2),
            print_dist_at(&b.node, 3)
        ),
        DistExpr::Scale(f, d) => format!(
            "{} . {}",
            print_fn_at(&f.node, 2),
            print_dist_at(&d.node, 3)
        ),
        DistExpr::Translate(tau, d) => format!("TR({tau}, {})", print_dist_at(&d.node, 1)),
        DistExpr::LimitLeft(d) => format!("LIM-({})", print_dist_at(&d.node, 1)),
        DistExpr::LimitRight(d) => format!("LIM+({})", print_dist_at(&d.node, 1)),
        DistExpr::DerivLeft(d) => format!("D-({})", print_dist_at(&d.node, 1)),
        DistExpr::DerivRight(d) => format!("D+({})", print_dist_at(&d.node, 1)),
    };
    if dist_level(e) < min {
        format!("({text})")
    } else {
        text
    }
}

fn fn2_level(e: &Fn2Expr) -> u8 {
    match e {
        Fn2Expr::Xor2(..) => 1,
        Fn2Expr::And2(..) => 2,
        _ => 3,
    }
}

pub fn print_fn2(e: &Fn2Expr) -> String {
    print_fn2_at(e, 1)
}

fn print_factor2(f: &Factor2) -> String {
    match f {
        Factor2::Point(t) => format!("{{{t}}}"),
        Factor2::Open(a, b) => format!("({a}, {b})"),
    }
}

fn print_fn2_at(e: &Fn2Expr, min: u8) -> String {
    let text = match e {
        Fn2Expr::Zero2 => "0".to_string(),
        Fn2Expr::Chi2(tf, uf) => {
            format!("CHI2{{{}x{}}}", print_factor2(tf), print_factor2(uf))
        }
        Fn2Expr::Xor2(a, b) => format!(
            "{} + {}",
            print_fn2_at(&a.node, 1),
            print_fn2_at(&b.node, 2)
        ),
        Fn2Expr::And2(a, b) => format!(
            "{} * {}",
            print_fn2_at(&a.node, 2),
            print_fn2_at(&b.node, 3)
        ),
        Fn2Expr::Translate2(tau, nu, f) => {
            format!("TR2({tau}, {nu}, {})", print_fn2_at(&f.node, 1))
        }
        Fn2Expr::Swap(f) => format!("SWAP({})", print_fn2_at(&f.node, 1)),
    };
    if fn2_level(e) < min {
        format!("({text})")
    } else {
        text
    }
}

pub fn print_expr(e: &ExprAst) -> String {
    match e {
        ExprAst::Set(s) => print_set(s),
        ExprAst::Fn(f) => print_fn(f),
        ExprAst::Dist(d) => print_dist(d),
        ExprAst::Fn2(f) => print_fn2(f),
    }
}
