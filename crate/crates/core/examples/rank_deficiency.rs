//! Why a violating subset kills the determinant: the rows of its blocks all
//! vanish on a common Vandermonde, so they cannot be independent.
//!
//!     cargo run --example rank_deficiency

use subcode::constraints::GeneralInstance;
use subcode::field::FieldContext;
use subcode::oracle::PIT_PRIME;
use subcode::sylvester;

fn main() -> subcode::Result<()> {
    let f = FieldContext::prime(PIT_PRIME)?;
    // blocks 0 and 1 share {0, 1}: 2 common roots + 2 rows > max(|S_i| + r_i) = 3
    let inst = GeneralInstance::new(4, vec![(vec![0, 1], 1), (vec![0, 1], 1), (vec![2], 2)])?;
    let verdict = inst.check_general()?;
    println!("{inst}: {verdict:?}");
    let omega = verdict.witness().expect("violating").to_vec();
    let alphas: Vec<_> = [11, 22, 33, 44].iter().map(|&v| f.from_int(v)).collect();
    let report = sylvester::rank_deficiency_witness(&inst, &omega, &alphas, &f)?;
    println!("omega = {:?}, common roots {:?}", report.omega, report.common);
    println!(
        "r0 = {}, k' = {}, rank M0 = {}",
        report.r0, report.k_prime, report.rank_m0
    );
    println!(
        "M0 W = 0: {}, det M = 0: {}",
        report.annihilated, report.determinant_zero
    );
    println!("confirmed: {}", report.confirmed());
    Ok(())
}
