//! Which zero patterns allow an MDS code, and what distance is possible
//! otherwise.
//!
//!     cargo run --example feasibility_check

use subcode::constraints::ConstraintInstance;

fn main() -> subcode::Result<()> {
    let cases = [
        ("unconstrained", 6, vec![vec![], vec![], vec![]]),
        ("GM-MDS pattern", 5, vec![vec![0, 1], vec![2, 3], vec![1, 4]]),
        ("two rows share a zero", 3, vec![vec![0], vec![0]]),
        ("running example", 4, vec![vec![0, 1], vec![2]]),
        ("too many common zeros", 2, vec![vec![0, 1], vec![0, 1]]),
    ];
    for (name, n, sets) in cases {
        let inst = ConstraintInstance::new(n, sets)?;
        let bound = inst.singleton_bound()?;
        let verdict = inst.check_gmmds()?;
        println!(
            "{name}: n = {}, k = {}, zero sets {:?}",
            inst.n(),
            inst.k(),
            inst.set_lists()
        );
        println!("  ell = {}, best distance n + 1 - ell = {}", bound.ell, bound.d_upper);
        match verdict.witness() {
            None => println!("  MDS possible (d = n - k + 1)"),
            Some(omega) => println!("  not MDS: first violating row subset {omega:?} (0-based)"),
        }
        if !bound.is_feasible_length() {
            println!("  no code of this length exists");
        } else {
            println!("  padded with {} empty rows to reach ell", bound.ell - inst.k());
        }
    }
    Ok(())
}
