//! Polynomials over GF(5): roots, division, the truncated Euclidean step
//! used by the decoder, and interpolation.
//!
//!     cargo run --example polynomials

use subcode::field::{FieldContext, FieldPolicy};
use subcode::poly::Polynomial;

fn show(p: &Polynomial) -> String {
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => format!("{c}"),
            1 => format!("{c}x"),
            _ => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() -> subcode::Result<()> {
    let f = FieldContext::make_field(5, FieldPolicy::Forced(5))?;
    let e = |v: i64| f.from_int(v);

    // x * (x + 2) * (x + 3): vanishes at -0, -2, -3
    let alphas = [e(0), e(2), e(3)];
    let p = Polynomial::from_constraint_roots(&f, [0, 1, 2], &alphas, 0)?;
    println!("prod (x + alpha_j) = {}", show(&p));
    for b in [0, 3, 2] {
        println!("  value at {b}: {}", p.eval(e(b), &f));
    }

    let g = Polynomial::from_coeffs(vec![e(1), e(1)]);
    let (q, r) = p.divrem(&g, &f)?;
    println!("divided by x + 1: quotient {}, remainder {}", show(&q), show(&r));

    // stop once deg r < 2: r = u x^4 + v (x^3 + x)
    let x4 = Polynomial::monomial(4);
    let x3x = Polynomial::from_coeffs(vec![e(0), e(1), e(0), e(1)]);
    let (r, v) = Polynomial::gcd_partial(&x4, &x3x, 2, &f)?;
    println!("gcd_partial(x^4, x^3 + x, 2): r = {}, v = {}", show(&r), show(&v));

    let xs = [e(0), e(1), e(2), e(4)];
    let ys: Vec<_> = xs.iter().map(|&x| p.eval(x, &f)).collect();
    println!("interpolated back: {}", show(&Polynomial::interpolate(&xs, &ys, &f)?));
    Ok(())
}
