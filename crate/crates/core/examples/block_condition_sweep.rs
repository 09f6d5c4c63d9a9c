//! Sweep every block instance with k, n <= 3 and compare the subset
//! condition with randomized evaluation of det M over GF(2^61 - 1).
//!
//!     cargo run --release --example block_condition_sweep

use subcode::oracle;

fn main() -> subcode::Result<()> {
    let all = oracle::enumerate_general_instances(3, 3)?;
    let (mut holds, mut agree) = (0, 0);
    for (i, g) in all.iter().enumerate() {
        let cond = g.check_general()?.holds();
        let report = oracle::det_identity_oracle(g, oracle::DEFAULT_TRIALS, i as u64);
        holds += usize::from(cond);
        agree += usize::from(cond == report.nonzero());
    }
    println!(
        "{} instances, condition holds on {holds}, agreement {agree}/{}",
        all.len(),
        all.len()
    );

    let dup = &all
        .iter()
        .find(|g| g.m() == 2 && g.blocks()[0] == g.blocks()[1] && g.blocks()[0].set.len() == 1)
        .unwrap();
    let r = oracle::det_identity_oracle(dup, 20, 0);
    println!(
        "{dup}: {:?}, D = {}, error bound 2^{:.0}",
        r.verdict, r.degree_bound, r.error_bound_log2
    );
    Ok(())
}
