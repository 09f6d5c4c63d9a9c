//! Arithmetic in GF(7), GF(9) and GF(16).
//!
//!     cargo run --example field_arithmetic

use subcode::field::{FieldContext, FieldPolicy};

fn main() -> subcode::Result<()> {
    let f7 = FieldContext::make_field(7, FieldPolicy::SmallestPrime)?;
    let (a, b) = (f7.from_int(3), f7.from_int(5));
    println!("GF(7): 3 * 5 = {}, 3^-1 = {}", f7.mul(a, b), f7.inv(a)?);

    // smallest prime power >= 9 is 9 itself, built as GF(3)[x] / (x^2 + 1)
    let f9 = FieldContext::make_field(9, FieldPolicy::SmallestPrimePower)?;
    println!(
        "GF(9): p = {}, m = {}, modulus = {:?}",
        f9.characteristic(),
        f9.degree(),
        f9.modulus()
    );
    let x = f9.from_coefficients(&[0, 1])?;
    println!(
        "GF(9): x^2 = {:?} (coefficients, constant first)",
        f9.coefficients(f9.mul(x, x))
    );

    let f16 = FieldContext::make_field(16, FieldPolicy::Forced(16))?;
    let g = f16.from_encoding(2)?;
    let order = (1..16).find(|&e| f16.pow(g, e) == f16.one()).unwrap();
    println!("GF(16): x has multiplicative order {order}");
    println!(
        "GF(16): sum of all elements = {}",
        f16.enumerate().fold(f16.zero(), |s, e| f16.add(s, e))
    );
    Ok(())
}
