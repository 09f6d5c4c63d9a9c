//! Build an optimal code for a zero pattern, check it, and print the
//! DesignFile.
//!
//!     cargo run --example construct_code

use subcode::constraints::ConstraintInstance;
use subcode::design::{design, SearchConfig};
use subcode::field::FieldPolicy;
use subcode::format::DesignFile;
use subcode::oracle;

fn main() -> subcode::Result<()> {
    let inst = ConstraintInstance::new(4, vec![vec![0, 1], vec![2]])?;
    let d = design(&inst, FieldPolicy::SmallestPrime, SearchConfig::default(), 7)?;
    println!(
        "q = {}, n = {}, k = {}, ell = {}, d = {}",
        d.field().order(),
        d.n(),
        d.k(),
        d.ell(),
        d.d()
    );
    println!("search: {:?}", d.search_stats());
    for row in d.generator().to_rows() {
        println!("  {:?}", row.iter().map(|e| e.encoding()).collect::<Vec<_>>());
    }
    let pattern = oracle::verify_zero_pattern(d.generator(), &inst)?;
    let dist = oracle::min_distance_bruteforce(d.generator(), d.field(), None)?;
    println!(
        "zero pattern: {}, brute-force distance: {dist}",
        pattern.verdict.as_string()
    );

    // a larger one, MDS because the pattern satisfies the GM-MDS condition
    let mds = ConstraintInstance::new(8, vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 6, 7], vec![1, 4]])?;
    let d = design(&mds, FieldPolicy::SmallestPrimePower, SearchConfig::default(), 1)?;
    println!(
        "\n[{}, {}, {}] code over GF({})",
        d.n(),
        d.k(),
        d.d(),
        d.field().order()
    );
    print!("{}", DesignFile::from_design(&d).to_json());
    Ok(())
}
